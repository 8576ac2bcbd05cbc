use std::fs;
use std::path::Path;

use diffsets_core::constructions::{
    best_construction, coset_progression, lex_prefix, product_construction, WitnessReport,
};
use diffsets_core::formulas::{
    mu, rho_minus_evaluation, rho_minus_vector_space, rho_plus, rho_pm_predicted,
    split_signed_size, FormulaStatus,
};
use diffsets_core::lemmas::{
    check_hyperplane_lemma, check_lemma_a1, check_lemma_a2, ferrers_containment, minimal_mu,
    mu_from_lambda, sweep_hyperplane_exhaustive, sweep_hyperplane_random, sweep_lemma_a1,
    sweep_lemma_a2, HyperplaneCheck, IntPartitionSeq, LemmaOutcome, SweepSummary,
};
use diffsets_core::search::{
    check_signed_lower_bound, exact_rho, exact_rho_pm2, prediction, verify_conjecture,
    SearchCertificate, SearchRecord, VerifyOptions,
};
use diffsets_core::{Element, GroupSubset, Objective};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::report::{Emitter, Report};
use crate::CliError;

/// What a successful run found. A counterexample to a stated result gets
/// its own exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finding {
    Consistent,
    Counterexample,
}

impl Finding {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Finding::Consistent
        } else {
            Finding::Counterexample
        }
    }
}

type Outcome = Result<Finding, CliError>;

pub fn run(command: Command, out: &mut Emitter) -> Outcome {
    match command {
        Command::Formula(c) => formula(c, out),
        Command::Construct(c) => construct(c, out),
        Command::Search(a) => search(a, out),
        Command::Signed(a) => signed(a, out),
        Command::VerifyConjecture(a) => verify(a, out),
        Command::Lemmas(c) => lemmas(c, out),
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn describe(params: &Map<String, Value>) -> String {
    params
        .iter()
        .map(|(k, v)| {
            format!(
                "{k}={}",
                v.as_str().map_or_else(|| v.to_string(), str::to_string)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn coords(set: &GroupSubset) -> Vec<Vec<usize>> {
    set.elements()
        .into_iter()
        .map(Element::into_coords)
        .collect()
}

fn objective_symbol(o: Objective) -> &'static str {
    match o {
        Objective::Diff => "|A - A|",
        Objective::Sum => "|A + A|",
        Objective::Signed2 => "|2±A|",
    }
}

fn write_witness(path: Option<&Path>, set: &GroupSubset) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(path, set.to_witness_json() + "\n")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FormulaReport {
    quantity: &'static str,
    #[serde(flatten)]
    inputs: Map<String, Value>,
    value: usize,
    status: FormulaStatus,
}

impl Report for FormulaReport {
    fn text(&self) -> String {
        format!(
            "{} {}: {}\nstatus: {}\n",
            self.quantity,
            describe(&self.inputs),
            self.value,
            self.status
        )
    }
}

fn formula(command: FormulaCommand, out: &mut Emitter) -> Outcome {
    let report = match command {
        FormulaCommand::Mu { target, s } => FormulaReport {
            quantity: "mu",
            value: mu(&target.group, target.r, s)?,
            inputs: params(&[
                ("group", json!(target.group.to_string())),
                ("r", json!(target.r)),
                ("s", json!(s)),
            ]),
            status: FormulaStatus::Theorem,
        },
        FormulaCommand::RhoPlus(target) => FormulaReport {
            quantity: "rho-plus",
            value: rho_plus(&target.group, target.r)?,
            inputs: params(&[
                ("group", json!(target.group.to_string())),
                ("r", json!(target.r)),
            ]),
            status: FormulaStatus::Theorem,
        },
        FormulaCommand::RhoMinus(target) => {
            let eval = rho_minus_evaluation(&target.group, target.r)?;
            FormulaReport {
                quantity: "rho-minus",
                value: eval.value,
                inputs: params(&[
                    ("group", json!(target.group.to_string())),
                    ("r", json!(target.r)),
                ]),
                status: eval.status,
            }
        }
        FormulaCommand::VectorSpace { p, d, r } => FormulaReport {
            quantity: "vector-space",
            value: rho_minus_vector_space(p, d, r)?,
            inputs: params(&[("p", json!(p)), ("d", json!(d)), ("r", json!(r))]),
            status: FormulaStatus::TheoremVectorSpace,
        },
        FormulaCommand::RhoPm { p, m } => {
            let (c, v) = split_signed_size(p, m)?;
            FormulaReport {
                quantity: "rho-pm",
                value: rho_pm_predicted(p, c, v)?,
                inputs: params(&[
                    ("p", json!(p)),
                    ("m", json!(m)),
                    ("c", json!(c)),
                    ("v", json!(v)),
                ]),
                status: FormulaStatus::TheoremVectorSpace,
            }
        }
    };
    out.emit(&report)?;
    Ok(Finding::Consistent)
}

#[derive(Serialize)]
struct ConstructReport {
    construction: String,
    group: String,
    #[serde(flatten)]
    inputs: Map<String, Value>,
    size: usize,
    objective: Objective,
    achieved_size: usize,
    target_bound: usize,
    meets_bound: bool,
    witness: Vec<Vec<usize>>,
    #[serde(skip)]
    set: String,
}

impl ConstructReport {
    fn new(w: &WitnessReport, inputs: Map<String, Value>) -> Self {
        Self {
            construction: w.construction.to_string(),
            group: w.set.group().to_string(),
            inputs,
            size: w.set.len(),
            objective: w.objective,
            achieved_size: w.achieved_size,
            target_bound: w.target_bound,
            meets_bound: w.meets_bound(),
            witness: coords(&w.set),
            set: w.set.to_string(),
        }
    }
}

impl Report for ConstructReport {
    fn text(&self) -> String {
        format!(
            "{} in [{}] with {}\nset ({} elements): {}\n{} = {}, target bound {}\n",
            self.construction,
            self.group,
            describe(&self.inputs),
            self.size,
            self.set,
            objective_symbol(self.objective),
            self.achieved_size,
            self.target_bound
        )
    }
}

fn construct(command: ConstructCommand, out: &mut Emitter) -> Outcome {
    let (built, inputs, witness) = match command {
        ConstructCommand::CosetProgression { n, r, d, witness } => (
            coset_progression(n, r, d)?,
            params(&[("n", json!(n)), ("r", json!(r)), ("d", json!(d))]),
            witness,
        ),
        ConstructCommand::Product {
            target,
            d1,
            d2,
            witness,
        } => (
            product_construction(&target.group, target.r, d1, d2)?,
            params(&[("r", json!(target.r)), ("d1", json!(d1)), ("d2", json!(d2))]),
            witness,
        ),
        ConstructCommand::Best { target, witness } => (
            best_construction(&target.group, target.r)?,
            params(&[("r", json!(target.r))]),
            witness,
        ),
        ConstructCommand::LexPrefix { p, d, r, witness } => (
            lex_prefix(p, d, r)?,
            params(&[("p", json!(p)), ("d", json!(d)), ("r", json!(r))]),
            witness,
        ),
    };
    write_witness(witness.witness.as_deref(), &built.set)?;
    let report = ConstructReport::new(&built, inputs);
    out.emit(&report)?;
    Ok(Finding::from_ok(report.meets_bound))
}

#[derive(Serialize)]
struct SearchReport {
    group: String,
    r: usize,
    objective: Objective,
    mode: String,
    minimum: usize,
    prediction: Option<usize>,
    equal: Option<bool>,
    lower_bound: usize,
    nodes: u64,
    millis: u64,
    witness: Vec<Vec<usize>>,
    #[serde(skip)]
    set: String,
}

impl SearchReport {
    fn new(cert: &SearchCertificate, prediction: Option<usize>) -> Self {
        Self {
            group: cert.group.to_string(),
            r: cert.r,
            objective: cert.objective,
            mode: cert.mode.to_string(),
            minimum: cert.minimum,
            prediction,
            equal: prediction.map(|p| p == cert.minimum),
            lower_bound: cert.lower_bound,
            nodes: cert.nodes_explored,
            millis: cert.elapsed.as_millis() as u64,
            witness: coords(&cert.witness),
            set: cert.witness.to_string(),
        }
    }
}

fn prediction_line(prediction: Option<usize>, equal: Option<bool>) -> String {
    match (prediction, equal) {
        (Some(p), Some(true)) => format!("predicted {p} (equal)\n"),
        (Some(p), _) => format!("predicted {p} (DIFFERENT)\n"),
        _ => "no prediction\n".to_string(),
    }
}

impl Report for SearchReport {
    fn text(&self) -> String {
        format!(
            "min {} over {}-subsets of [{}]: {}\nwitness: {}\n{}{}, {} nodes, {} ms\n",
            objective_symbol(self.objective),
            self.r,
            self.group,
            self.minimum,
            self.set,
            prediction_line(self.prediction, self.equal),
            self.mode,
            self.nodes,
            self.millis
        )
    }
}

fn search(args: SearchArgs, out: &mut Emitter) -> Outcome {
    let objective = Objective::from(args.objective);
    let g = &args.target.group;
    let cert = exact_rho(g, args.target.r, objective, &args.flags.options())?;
    write_witness(args.witness.witness.as_deref(), &cert.witness)?;
    let report = SearchReport::new(&cert, prediction(g, args.target.r, objective));
    out.emit(&report)?;
    Ok(Finding::from_ok(report.equal != Some(false)))
}

#[derive(Serialize)]
struct BoundReport {
    rho_minus_m: usize,
    rho_minus_2m: usize,
    bound: usize,
    holds: bool,
}

#[derive(Serialize)]
struct SignedReport {
    #[serde(flatten)]
    search: SearchReport,
    lower_bound_check: Option<BoundReport>,
}

impl Report for SignedReport {
    fn text(&self) -> String {
        let mut text = self.search.text();
        if let Some(b) = &self.lower_bound_check {
            text += &format!(
                "min{{ρ⁻(m), ρ⁻(2m) - 1}} = min{{{}, {} - 1}} = {}: {}\n",
                b.rho_minus_m,
                b.rho_minus_2m,
                b.bound,
                if b.holds { "holds" } else { "FAILS" }
            );
        }
        text
    }
}

fn signed(args: SignedArgs, out: &mut Emitter) -> Outcome {
    let opts = args.flags.options();
    let cert = exact_rho_pm2(&args.group, args.m, &opts)?;
    write_witness(args.witness.witness.as_deref(), &cert.witness)?;
    let lower_bound_check = if args.check_bound {
        let check = check_signed_lower_bound(&args.group, args.m, &opts)?;
        debug_assert_eq!(check.rho_pm, cert.minimum);
        Some(BoundReport {
            rho_minus_m: check.rho_minus_m,
            rho_minus_2m: check.rho_minus_2m,
            bound: check.bound,
            holds: check.holds,
        })
    } else {
        None
    };
    let report = SignedReport {
        search: SearchReport::new(&cert, prediction(&args.group, args.m, Objective::Signed2)),
        lower_bound_check,
    };
    out.emit(&report)?;
    let ok = report.search.equal != Some(false)
        && report.lower_bound_check.as_ref().is_none_or(|b| b.holds);
    Ok(Finding::from_ok(ok))
}

#[derive(Serialize)]
struct VerifySummary {
    max_order: usize,
    groups_checked: usize,
    records: usize,
    cross_checked: usize,
    all_equal: bool,
    counterexamples: Vec<SearchRecord>,
}

fn record_line(rec: &SearchRecord) -> String {
    let predicted = rec
        .conjectured
        .map_or_else(|| "-".to_string(), |c| c.to_string());
    let verdict = match rec.equal {
        Some(true) => "equal",
        Some(false) => "COUNTEREXAMPLE",
        None => "-",
    };
    format!(
        "[{}] r={}: minimum {}, predicted {}, {}",
        rec.group, rec.r, rec.minimum, predicted, verdict
    )
}

fn verify(args: VerifyArgs, out: &mut Emitter) -> Outcome {
    let opts = VerifyOptions {
        search: args.flags.options(),
        cross_check_max_order: args.cross_check_max_order,
    };
    let format = out.format();
    let mut stream_err = None;
    let report = verify_conjecture(args.max_order, &opts, |rec| {
        let written = match format {
            Format::Json => out.json_line(rec),
            Format::Text => out.text_line(&record_line(rec)),
            Format::Csv => Ok(()),
        };
        if let Err(e) = written {
            stream_err.get_or_insert(e);
        }
    })?;
    if let Some(e) = stream_err {
        return Err(e.into());
    }
    let summary = VerifySummary {
        max_order: args.max_order,
        groups_checked: report.groups_checked,
        records: report.records.len(),
        cross_checked: report.cross_checked,
        all_equal: report.all_equal(),
        counterexamples: report.counterexamples.clone(),
    };
    match format {
        Format::Json => out.json_line(&json!({ "summary": summary }))?,
        Format::Csv => out.csv(&report.records)?,
        Format::Text => out.text_line(&format!(
            "{} groups, {} records, {} cross-checked exhaustively, {} counterexamples",
            summary.groups_checked,
            summary.records,
            summary.cross_checked,
            summary.counterexamples.len()
        ))?,
    }
    Ok(Finding::from_ok(report.all_equal()))
}

fn outcome_text(outcome: &LemmaOutcome) -> String {
    match outcome {
        LemmaOutcome::Holds { slack } => format!("holds, slack {slack}"),
        LemmaOutcome::Fails { slack } => format!("FAILS, slack {slack}"),
        LemmaOutcome::HypothesisViolated { reason } => format!("hypothesis not met: {reason}"),
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct A1Report {
    lambda: Vec<usize>,
    mu: Vec<usize>,
    #[serde(flatten)]
    outcome: LemmaOutcome,
    ferrers_containment: bool,
}

impl Report for A1Report {
    fn text(&self) -> String {
        format!(
            "λ = {}\nμ = {}\nΣμ ≥ 3Σλ - 3: {}\nF(λ) + F(λ) ⊆ F(μ): {}\n",
            join(&self.lambda),
            join(&self.mu),
            outcome_text(&self.outcome),
            if self.ferrers_containment {
                "yes"
            } else {
                "NO"
            }
        )
    }
}

#[derive(Serialize)]
struct A2Report {
    p: usize,
    n: usize,
    lambda: Vec<usize>,
    mu: Vec<usize>,
    #[serde(flatten)]
    outcome: LemmaOutcome,
}

impl Report for A2Report {
    fn text(&self) -> String {
        format!(
            "p = {}, n = {}\nλ = {}\nμ = {}\nΣμ ≥ (2n+1)p: {}\n",
            self.p,
            self.n,
            join(&self.lambda),
            join(&self.mu),
            outcome_text(&self.outcome)
        )
    }
}

#[derive(Serialize)]
struct HyperplaneReport {
    p: usize,
    d: usize,
    m: i64,
    size: usize,
    #[serde(flatten)]
    check: HyperplaneCheck,
}

impl Report for HyperplaneReport {
    fn text(&self) -> String {
        let c = &self.check;
        format!(
            "|S| = {} in (Z/{})^{}, m = {}\nmin |S ∩ H| over {} hyperplanes: {}\nhypothesis {}, conclusion {}: {}\n",
            self.size,
            self.p,
            self.d,
            self.m,
            c.hyperplanes,
            c.min_intersection,
            if c.hypothesis_holds { "holds" } else { "fails" },
            if c.conclusion_holds { "holds" } else { "fails" },
            if c.implication_ok { "consistent" } else { "COUNTEREXAMPLE" }
        )
    }
}

#[derive(Serialize)]
struct SweepReport {
    sweep: &'static str,
    #[serde(flatten)]
    inputs: Map<String, Value>,
    #[serde(flatten)]
    summary: SweepSummary,
}

impl Report for SweepReport {
    fn text(&self) -> String {
        format!(
            "{} {}: {}\n",
            self.sweep,
            describe(&self.inputs),
            self.summary
        )
    }
}

fn seq(lambda: &IntPartitionSeq) -> Vec<usize> {
    lambda.values().to_vec()
}

fn lemmas(command: LemmaCommand, out: &mut Emitter) -> Outcome {
    match command {
        LemmaCommand::A1 { lambda } => {
            let report = A1Report {
                lambda: seq(&lambda),
                mu: mu_from_lambda(&lambda),
                outcome: check_lemma_a1(&lambda),
                ferrers_containment: ferrers_containment(&lambda),
            };
            out.emit(&report)?;
            let failed =
                matches!(report.outcome, LemmaOutcome::Fails { .. }) || !report.ferrers_containment;
            Ok(Finding::from_ok(!failed))
        }
        LemmaCommand::A2 { p, n, lambda, mu } => {
            let outcome = check_lemma_a2(p, n, &lambda, mu.as_deref());
            let report = A2Report {
                p,
                n,
                lambda: seq(&lambda),
                mu: mu.unwrap_or_else(|| minimal_mu(p, &lambda)),
                outcome,
            };
            out.emit(&report)?;
            Ok(Finding::from_ok(!matches!(
                report.outcome,
                LemmaOutcome::Fails { .. }
            )))
        }
        LemmaCommand::Hyperplane { p, d, m, witness } => {
            let set = GroupSubset::from_witness_json(&fs::read_to_string(&witness)?)?;
            let report = HyperplaneReport {
                p,
                d,
                m,
                size: set.len(),
                check: check_hyperplane_lemma(p, d, m, &set)?,
            };
            out.emit(&report)?;
            Ok(Finding::from_ok(report.check.implication_ok))
        }
        LemmaCommand::SweepA1 { max_len, max_part } => sweep(
            out,
            "sweep-a1",
            params(&[("max_len", json!(max_len)), ("max_part", json!(max_part))]),
            sweep_lemma_a1(max_len, max_part),
        ),
        LemmaCommand::SweepA2 { p } => sweep(
            out,
            "sweep-a2",
            params(&[("p", json!(p))]),
            sweep_lemma_a2(p)?,
        ),
        LemmaCommand::SweepHyperplane {
            p,
            d,
            m,
            samples,
            seed,
        } => {
            let (inputs, summary) = match samples {
                None => (
                    params(&[
                        ("p", json!(p)),
                        ("d", json!(d)),
                        ("m", json!(m)),
                        ("mode", json!("exhaustive")),
                    ]),
                    sweep_hyperplane_exhaustive(p, d, m)?,
                ),
                Some(samples) => (
                    params(&[
                        ("p", json!(p)),
                        ("d", json!(d)),
                        ("m", json!(m)),
                        ("mode", json!("random")),
                        ("samples", json!(samples)),
                        ("seed", json!(seed)),
                    ]),
                    sweep_hyperplane_random(p, d, m, samples, seed)?,
                ),
            };
            sweep(out, "sweep-hyperplane", inputs, summary)
        }
    }
}

fn sweep(
    out: &mut Emitter,
    name: &'static str,
    inputs: Map<String, Value>,
    summary: SweepSummary,
) -> Outcome {
    let clean = summary.clean();
    out.emit(&SweepReport {
        sweep: name,
        inputs,
        summary,
    })?;
    Ok(Finding::from_ok(clean))
}
