use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffsets_core::lemmas::IntPartitionSeq;
use diffsets_core::search::{AutomorphismPruning, SearchMode, SearchOptions};
use diffsets_core::{GroupSpec, Objective};

#[derive(Parser, Debug)]
#[command(
    name = "diffsets",
    version,
    about = "Extremal sumset and difference-set sizes in finite abelian groups"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a closed-form value
    #[command(subcommand)]
    Formula(FormulaCommand),
    /// Build an explicit set meeting an upper bound
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Exact minimum of an objective over all r-subsets
    Search(SearchArgs),
    /// Exact minimum of |2±A| over all m-subsets
    Signed(SignedArgs),
    /// Compare exact minima of |A - A| with the predicted value for every group up to an order
    VerifyConjecture(VerifyArgs),
    /// Check the auxiliary inequalities
    #[command(subcommand)]
    Lemmas(LemmaCommand),
}

#[derive(Args, Debug)]
pub struct GroupR {
    /// Cyclic factor orders, e.g. 4,2
    #[arg(long, short)]
    pub group: GroupSpec,
    #[arg(long, short)]
    pub r: usize,
}

#[derive(Subcommand, Debug)]
pub enum FormulaCommand {
    /// μ_G(r, s)
    Mu {
        #[command(flatten)]
        target: GroupR,
        #[arg(long, short)]
        s: usize,
    },
    /// Minimum of |A + A| over r-subsets
    RhoPlus(GroupR),
    /// Predicted minimum of |A - A| over r-subsets
    RhoMinus(GroupR),
    /// Minimum of |A - A| in (Z/p)^d
    VectorSpace {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        d: u32,
        #[arg(long, short)]
        r: usize,
    },
    /// Predicted minimum of |2±A| in (Z/p)^2
    RhoPm {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Union of consecutive cosets of a subgroup of Z/n
    CosetProgression {
        #[arg(long, short)]
        n: usize,
        #[arg(long, short)]
        r: usize,
        #[arg(long, short)]
        d: usize,
        #[command(flatten)]
        witness: WitnessOut,
    },
    /// Subgroup times coset progression
    Product {
        #[command(flatten)]
        target: GroupR,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        #[command(flatten)]
        witness: WitnessOut,
    },
    /// The product construction with the smallest bound
    Best {
        #[command(flatten)]
        target: GroupR,
        #[command(flatten)]
        witness: WitnessOut,
    },
    /// First r elements of (Z/p)^d in lexicographic order
    LexPrefix {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        d: usize,
        #[arg(long, short)]
        r: usize,
        #[command(flatten)]
        witness: WitnessOut,
    },
}

#[derive(Args, Debug)]
pub struct WitnessOut {
    /// Also write the set as a witness JSON file
    #[arg(long, short)]
    pub witness: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchFlags {
    #[arg(long, value_enum, default_value_t = ModeArg::Bnb)]
    pub mode: ModeArg,
    /// Worker threads
    #[arg(long, env = "DIFFSETS_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Refuse jobs whose candidate count exceeds this
    #[arg(long, default_value_t = diffsets_core::search::DEFAULT_NODE_BUDGET)]
    pub node_budget: u128,
    #[arg(long, value_enum, default_value_t = AutArg::Auto)]
    pub automorphisms: AutArg,
}

impl SearchFlags {
    pub fn options(&self) -> SearchOptions {
        SearchOptions::default()
            .with_mode(match self.mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Bnb => SearchMode::BranchAndBound,
            })
            .with_workers(self.workers)
            .with_node_budget(Some(self.node_budget))
            .with_automorphisms(match self.automorphisms {
                AutArg::Off => AutomorphismPruning::Off,
                AutArg::On => AutomorphismPruning::On,
                AutArg::Auto => AutomorphismPruning::Auto,
            })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Bnb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AutArg {
    Off,
    On,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ObjectiveArg {
    Diff,
    Sum,
    Signed2,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Diff => Objective::Diff,
            ObjectiveArg::Sum => Objective::Sum,
            ObjectiveArg::Signed2 => Objective::Signed2,
        }
    }
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub target: GroupR,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Diff)]
    pub objective: ObjectiveArg,
    #[command(flatten)]
    pub flags: SearchFlags,
    #[command(flatten)]
    pub witness: WitnessOut,
}

#[derive(Args, Debug)]
pub struct SignedArgs {
    #[arg(long, short)]
    pub group: GroupSpec,
    #[arg(long, short)]
    pub m: usize,
    /// Also check ρ±(m) ≥ min{ρ⁻(m), ρ⁻(2m) - 1}
    #[arg(long)]
    pub check_bound: bool,
    #[command(flatten)]
    pub flags: SearchFlags,
    #[command(flatten)]
    pub witness: WitnessOut,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub max_order: usize,
    /// Groups up to this order are also searched exhaustively
    #[arg(long, default_value_t = 10)]
    pub cross_check_max_order: usize,
    #[command(flatten)]
    pub flags: SearchFlags,
}

#[derive(Subcommand, Debug)]
pub enum LemmaCommand {
    /// Σμ ≥ 3Σλ - 3 for one sequence
    A1 {
        #[arg(long, short)]
        lambda: IntPartitionSeq,
    },
    /// Σμ ≥ (2n+1)p for one sequence
    A2 {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        n: usize,
        #[arg(long, short)]
        lambda: IntPartitionSeq,
        /// Explicit μ; defaults to the smallest admissible one
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<usize>>,
    },
    /// Hyperplane intersection bound for one witness set in (Z/p)^d
    Hyperplane {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        d: usize,
        #[arg(long, short, allow_negative_numbers = true)]
        m: i64,
        /// Witness JSON file holding the set
        #[arg(long, short)]
        witness: PathBuf,
    },
    /// A1 over every sequence with bounded length and largest term
    SweepA1 {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        max_part: usize,
    },
    /// A2 over every admissible sequence for one prime
    SweepA2 {
        #[arg(long, short)]
        p: usize,
    },
    /// Hyperplane bound over all subsets, or random ones with --samples
    SweepHyperplane {
        #[arg(long, short)]
        p: usize,
        #[arg(long, short)]
        d: usize,
        #[arg(long, short, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}
