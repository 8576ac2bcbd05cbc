//! Subsets of a finite abelian group as fixed-length bit vectors.
//!
//! Bit `i` is set exactly when the element with linear index `i` (see
//! [`crate::group`]) is a member.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::group::{Element, GroupSpec};

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: GroupSpec,
    bits: Vec<u64>,
}

impl GroupSubset {
    pub fn empty(group: &GroupSpec) -> Self {
        Self {
            group: group.clone(),
            bits: vec![0; group.order().div_ceil(WORD)],
        }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        (0..group.order()).for_each(|i| s.insert_index(i));
        s
    }

    pub fn from_indices(
        group: &GroupSpec,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = Self::empty(group);
        let n = group.order();
        for i in indices {
            if i >= n {
                return domain(format!("index {i} out of range for group of order {n}"));
            }
            s.insert_index(i);
        }
        Ok(s)
    }

    pub fn from_elements(group: &GroupSpec, elements: &[Element]) -> Result<Self> {
        let indices = elements
            .iter()
            .map(|a| group.index_of(a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(group, indices)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        i < self.group.order() && self.bits[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.group.index_of(a).is_ok_and(|i| self.contains_index(i))
    }

    pub(crate) fn insert_index(&mut self, i: usize) {
        self.bits[i / WORD] |= 1 << (i % WORD);
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * WORD + bit
                })
            })
        })
    }

    /// Members in ascending linear-index order.
    pub fn elements(&self) -> Vec<Element> {
        self.indices()
            .map(|i| self.group.element_unchecked(i))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.group == other.group && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            bits,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            bits,
        })
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        Ok(())
    }

    /// Compact JSON witness: `{"group":"3,3","elements":[[0,0],[0,1]]}`.
    pub fn to_witness_json(&self) -> String {
        serde_json::to_string(&WitnessFile::from(self)).expect("witness serialises")
    }

    pub fn from_witness_json(s: &str) -> Result<Self> {
        let file: WitnessFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("witness file: {e}")))?;
        file.to_subset()
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// On-disk witness format. Elements are listed by ascending linear index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub group: String,
    pub elements: Vec<Vec<usize>>,
}

impl From<&GroupSubset> for WitnessFile {
    fn from(set: &GroupSubset) -> Self {
        Self {
            group: set.group.to_string(),
            elements: set
                .elements()
                .into_iter()
                .map(Element::into_coords)
                .collect(),
        }
    }
}

impl WitnessFile {
    pub fn to_subset(&self) -> Result<GroupSubset> {
        let group: GroupSpec = self.group.parse()?;
        let elements: Vec<Element> = self.elements.iter().cloned().map(Element::new).collect();
        let set = GroupSubset::from_elements(&group, &elements)?;
        if set.len() != elements.len() {
            return Err(Error::Parse("witness file lists an element twice".into()));
        }
        Ok(set)
    }
}

/// `A + B`. Iterates the smaller operand against the larger one.
pub fn sumset(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    a.same_group(b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let large: Vec<usize> = large.indices().collect();
    let mut out = GroupSubset::empty(&a.group);
    for x in small.indices() {
        for &y in &large {
            out.insert_index(a.group.add_indices(x, y));
        }
    }
    Ok(out)
}

/// `A - B`.
pub fn difference_set(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    sumset(a, &negate_set(b))
}

/// `-A`.
pub fn negate_set(a: &GroupSubset) -> GroupSubset {
    let mut out = GroupSubset::empty(&a.group);
    for i in a.indices() {
        out.insert_index(a.group.neg_index(i));
    }
    out
}

/// `2±A = {±2a : a ∈ A} ∪ {±a ± b : a, b ∈ A, a ≠ b}`.
pub fn signed_sumset_2(a: &GroupSubset) -> Result<GroupSubset> {
    if a.is_empty() {
        return domain("signed sumset of the empty set");
    }
    let g = &a.group;
    let members: Vec<usize> = a.indices().collect();
    let mut out = GroupSubset::empty(g);
    for (k, &x) in members.iter().enumerate() {
        let double = g.add_indices(x, x);
        out.insert_index(double);
        out.insert_index(g.neg_index(double));
        for &y in &members[k + 1..] {
            let sum = g.add_indices(x, y);
            let diff = g.add_indices(x, g.neg_index(y));
            for z in [sum, g.neg_index(sum), diff, g.neg_index(diff)] {
                out.insert_index(z);
            }
        }
    }
    Ok(out)
}

/// `A + t`.
pub fn translate(a: &GroupSubset, t: &Element) -> Result<GroupSubset> {
    let shift = a.group.index_of(t)?;
    let mut out = GroupSubset::empty(&a.group);
    for i in a.indices() {
        out.insert_index(a.group.add_indices(i, shift));
    }
    Ok(out)
}

/// Which extremal quantity a search or construction measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `|A - A|`
    Diff,
    /// `|A + A|`
    Sum,
    /// `|2±A|`
    Signed2,
}

impl Objective {
    pub fn measure(self, a: &GroupSubset) -> Result<usize> {
        Ok(match self {
            Objective::Diff => difference_set(a, a)?.len(),
            Objective::Sum => sumset(a, a)?.len(),
            Objective::Signed2 => signed_sumset_2(a)?.len(),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Diff => "diff",
            Objective::Sum => "sum",
            Objective::Signed2 => "signed2",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diff" => Ok(Objective::Diff),
            "sum" => Ok(Objective::Sum),
            "signed2" => Ok(Objective::Signed2),
            other => Err(Error::Parse(format!("unknown objective {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_abelian_groups;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn set(group: &GroupSpec, idx: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(group, idx.iter().copied()).unwrap()
    }

    fn idx(s: &GroupSubset) -> Vec<usize> {
        s.indices().collect()
    }

    /// Every subset of `group`, by bitmask over linear indices.
    fn all_subsets(group: &GroupSpec) -> impl Iterator<Item = GroupSubset> + '_ {
        let n = group.order();
        (0u64..1 << n).map(move |mask| {
            GroupSubset::from_indices(group, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap()
        })
    }

    #[test]
    fn sumset_examples() {
        let z5 = g("5");
        assert_eq!(
            idx(&sumset(&set(&z5, &[1, 2]), &set(&z5, &[1, 2])).unwrap()),
            vec![2, 3, 4]
        );

        let g33 = g("3,3");
        let prefix = set(&g33, &[0, 1, 2, 3]);
        assert_eq!(sumset(&prefix, &prefix).unwrap().len(), 7);

        let b = set(&g33, &[2, 4, 8]);
        assert_eq!(sumset(&set(&g33, &[0]), &b).unwrap(), b);
    }

    #[test]
    fn difference_examples() {
        let z4 = g("4");
        let a = set(&z4, &[0, 1, 2]);
        assert_eq!(idx(&difference_set(&a, &a).unwrap()), vec![0, 1, 2, 3]);

        let g33 = g("3,3");
        let prefix = set(&g33, &[0, 1, 2, 3]);
        assert_eq!(difference_set(&prefix, &prefix).unwrap().len(), 9);

        let single = set(&g33, &[5]);
        assert_eq!(idx(&difference_set(&single, &single).unwrap()), vec![0]);
    }

    #[test]
    fn negate_examples() {
        let z6 = g("6");
        assert_eq!(idx(&negate_set(&set(&z6, &[1, 2]))), vec![4, 5]);
        let v = g("2,2");
        for a in all_subsets(&v) {
            assert_eq!(negate_set(&a), a);
        }
        assert!(negate_set(&GroupSubset::empty(&z6)).is_empty());
    }

    #[test]
    fn signed_sumset_examples() {
        let z5 = g("5");
        assert_eq!(
            idx(&signed_sumset_2(&set(&z5, &[1, 2])).unwrap()),
            vec![1, 2, 3, 4]
        );
        let z7 = g("7");
        assert_eq!(idx(&signed_sumset_2(&set(&z7, &[0])).unwrap()), vec![0]);
        assert!(signed_sumset_2(&GroupSubset::empty(&z7)).is_err());
    }

    #[test]
    fn translate_examples() {
        let z4 = g("4");
        let t: Element = "(2)".parse().unwrap();
        assert_eq!(idx(&translate(&set(&z4, &[0, 1]), &t).unwrap()), vec![2, 3]);
        let a = set(&z4, &[1, 3]);
        assert_eq!(translate(&a, &z4.identity()).unwrap(), a);
        let g33 = g("3,3");
        let a =
            GroupSubset::from_elements(&g33, &["(0,0)".parse().unwrap(), "(1,1)".parse().unwrap()])
                .unwrap();
        let moved = translate(&a, &"(2,2)".parse().unwrap()).unwrap();
        assert_eq!(
            moved.elements(),
            vec!["(0,0)".parse().unwrap(), "(2,2)".parse().unwrap()]
        );
    }

    #[test]
    fn empty_operands_give_empty_results() {
        let z6 = g("6");
        let a = set(&z6, &[1, 2]);
        let empty = GroupSubset::empty(&z6);
        assert!(sumset(&a, &empty).unwrap().is_empty());
        assert!(difference_set(&empty, &a).unwrap().is_empty());
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let a = GroupSubset::full(&g("4"));
        let b = GroupSubset::full(&g("2,2"));
        assert!(matches!(sumset(&a, &b), Err(Error::GroupMismatch { .. })));
    }

    /// Definitional sumset straight from element arithmetic.
    fn naive_sumset(a: &GroupSubset, b: &GroupSubset) -> Vec<Element> {
        let grp = a.group();
        let mut out: Vec<Element> = a
            .elements()
            .iter()
            .flat_map(|x| {
                b.elements()
                    .into_iter()
                    .map(move |y| grp.add(x, &y).unwrap())
            })
            .collect();
        out.sort_by_key(|x| grp.index_of(x).unwrap());
        out.dedup();
        out
    }

    #[test]
    fn set_laws_exhaustive_small_groups() {
        for n in 1..=12 {
            for grp in enumerate_abelian_groups(n) {
                let lower = crate::formulas::mu;
                for a in all_subsets(&grp) {
                    if a.is_empty() {
                        continue;
                    }
                    let dd = difference_set(&a, &a).unwrap();
                    assert!(dd.contains_index(0));
                    assert_eq!(negate_set(&dd), dd);
                    assert_eq!(negate_set(&negate_set(&a)), a);
                    assert!(dd.len() >= lower(&grp, a.len(), a.len()).unwrap());
                    assert!(
                        sumset(&a, &a).unwrap().len() >= lower(&grp, a.len(), a.len()).unwrap()
                    );
                    let signed = signed_sumset_2(&a).unwrap();
                    assert_eq!(negate_set(&signed), signed);
                    assert_eq!(sumset(&a, &a).unwrap().elements(), naive_sumset(&a, &a));
                    for t in grp.elements() {
                        let moved = translate(&a, &t).unwrap();
                        assert_eq!(difference_set(&moved, &moved).unwrap().len(), dd.len());
                        assert_eq!(
                            sumset(&moved, &moved).unwrap().len(),
                            sumset(&a, &a).unwrap().len()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn signed_sumset_matches_coefficient_definition() {
        // λ₁a₁ + λ₂a₂ with distinct aᵢ and |λ₁| + |λ₂| = 2, enumerated over
        // coefficient vectors on element lists.
        for grp in ["6", "2,4", "3,3"] {
            let grp = g(grp);
            for a in all_subsets(&grp).filter(|a| !a.is_empty()) {
                let els = a.elements();
                let mut expected = GroupSubset::empty(&grp);
                let scale = |x: &Element, c: i64| -> Element {
                    let base = if c < 0 {
                        grp.neg(x).unwrap()
                    } else {
                        x.clone()
                    };
                    (1..c.unsigned_abs()).fold(base.clone(), |acc, _| grp.add(&acc, &base).unwrap())
                };
                for (i, x) in els.iter().enumerate() {
                    for c in [-2, 2] {
                        expected.insert_index(grp.index_of(&scale(x, c)).unwrap());
                    }
                    for (j, y) in els.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        for (c1, c2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let z = grp.add(&scale(x, c1), &scale(y, c2)).unwrap();
                            expected.insert_index(grp.index_of(&z).unwrap());
                        }
                    }
                }
                assert_eq!(signed_sumset_2(&a).unwrap(), expected);
            }
        }
    }

    #[test]
    fn witness_json_format() {
        let g33 = g("3,3");
        let a = set(&g33, &[3, 0, 1]);
        let json = a.to_witness_json();
        assert_eq!(json, r#"{"group":"3,3","elements":[[0,0],[0,1],[1,0]]}"#);
        assert_eq!(GroupSubset::from_witness_json(&json).unwrap(), a);

        let t = GroupSubset::full(&GroupSpec::trivial());
        assert_eq!(t.to_witness_json(), r#"{"group":"","elements":[[]]}"#);

        assert!(GroupSubset::from_witness_json(r#"{"group":"3","elements":[[1],[1]]}"#).is_err());
        assert!(GroupSubset::from_witness_json(r#"{"group":"3","elements":[[3]]}"#).is_err());
        assert!(GroupSubset::from_witness_json("{").is_err());
    }

    #[test]
    fn objective_round_trip() {
        for o in [Objective::Diff, Objective::Sum, Objective::Signed2] {
            assert_eq!(o.name().parse::<Objective>().unwrap(), o);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn witness_json_round_trips(
                factors in prop::collection::vec(2usize..6, 0..4),
                seed in any::<u64>(),
            ) {
                let grp = GroupSpec::new(factors).unwrap();
                let n = grp.order();
                let picked = (0..n).filter(|i| seed.rotate_left(*i as u32 % 64) & 1 == 1);
                let a = GroupSubset::from_indices(&grp, picked).unwrap();
                let json = a.to_witness_json();
                let back = GroupSubset::from_witness_json(&json).unwrap();
                prop_assert_eq!(&back, &a);
                prop_assert_eq!(back.to_witness_json(), json);
            }
        }
    }
}
