//! Finite abelian groups `Z/n₁ × … × Z/n_k` in mixed-radix coordinates.
//!
//! Elements are addressed by a row-major linear index
//! `Σ xᵢ · ∏_{j>i} n_j`, so the last coordinate varies fastest. Every other
//! module (bit vectors, witness files, search tables) relies on this
//! encoding.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::subset::GroupSubset;

/// A finite abelian group given by its cyclic factor orders.
///
/// The empty factor list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<usize>,
}

impl GroupSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor {bad} is below 2"
            )));
        }
        factors
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group order overflows usize".into()))?;
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: usize) -> Result<Self> {
        match n {
            0 => domain("cyclic group of order 0"),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    /// `(Z/p)^d`.
    pub fn elementary(p: usize, d: usize) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Self::new(vec![p; d])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.factors.iter().fold(1, |acc, &n| lcm(acc, n))
    }

    pub fn is_cyclic(&self) -> bool {
        invariant_factors(self).rank() <= 1
    }

    /// `Some((p, d))` when the group is `(Z/p)^d` with `d ≥ 1`.
    pub fn elementary_abelian(&self) -> Option<(usize, usize)> {
        let &p = self.factors.first()?;
        (is_prime(p) && self.factors.iter().all(|&n| n == p)).then_some((p, self.rank()))
    }

    pub fn identity(&self) -> Element {
        Element::new(vec![0; self.rank()])
    }

    pub fn validate(&self, a: &Element) -> Result<()> {
        if a.coords.len() != self.rank() {
            return Err(self.bad_element(
                a,
                format!(
                    "has {} coordinates, expected {}",
                    a.coords.len(),
                    self.rank()
                ),
            ));
        }
        if let Some((i, (&x, &n))) = a
            .coords
            .iter()
            .zip(&self.factors)
            .enumerate()
            .find(|(_, (&x, &n))| x >= n)
        {
            return Err(self.bad_element(a, format!("coordinate {i} is {x}, must be below {n}")));
        }
        Ok(())
    }

    fn bad_element(&self, a: &Element, reason: String) -> Error {
        Error::InvalidElement {
            element: a.to_string(),
            group: self.to_string(),
            reason,
        }
    }

    pub fn index_of(&self, a: &Element) -> Result<usize> {
        self.validate(a)?;
        Ok(a.coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &n)| acc * n + x))
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return domain(format!(
                "index {index} out of range for group of order {}",
                self.order()
            ));
        }
        Ok(self.element_unchecked(index))
    }

    pub(crate) fn element_unchecked(&self, mut index: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        for (c, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *c = index % n;
            index /= n;
        }
        Element::new(coords)
    }

    /// All elements in linear-index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|i| self.element_unchecked(i))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(Element::new(coords))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.validate(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Ok(Element::new(coords))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.add(a, &self.neg(b)?)
    }

    /// Sum of two elements given by linear index. Indices must be in range.
    pub fn add_indices(&self, mut i: usize, mut j: usize) -> usize {
        debug_assert!(i < self.order() && j < self.order());
        let (mut out, mut place) = (0, 1);
        for &n in self.factors.iter().rev() {
            out += ((i % n + j % n) % n) * place;
            place *= n;
            i /= n;
            j /= n;
        }
        out
    }

    pub fn neg_index(&self, mut i: usize) -> usize {
        debug_assert!(i < self.order());
        let (mut out, mut place) = (0, 1);
        for &n in self.factors.iter().rev() {
            out += ((n - i % n) % n) * place;
            place *= n;
            i /= n;
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `"4,2"`. The empty string and `"1"` give the trivial group;
/// factors equal to 1 are dropped.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in s.split(',') {
            let n: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad group factor {part:?} in {s:?}")))?;
            match n {
                0 => return Err(Error::InvalidGroup("cyclic factor 0".into())),
                1 => {}
                _ => factors.push(n),
            }
        }
        Self::new(factors)
    }
}

/// A group element as a coordinate vector. Validity is checked against a
/// [`GroupSpec`] at the point of use.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<usize>,
}

impl Element {
    pub fn new(coords: Vec<usize>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<usize> {
        self.coords
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `"(3,1)"` or `"3,1"`; `"()"` is the identity of the trivial group.
impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if inner.is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorisation as `(p, a)` pairs with ascending `p`.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return domain("divisors of 0 are not a finite set");
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `{ d₁d₂ : d₁ | N/e, d₂ | e, d₁·e ≥ r }`, ascending and deduplicated.
pub fn restricted_divisor_set(order: usize, exponent: usize, r: usize) -> Result<Vec<usize>> {
    if exponent == 0 || order == 0 || !order.is_multiple_of(exponent) {
        return domain(format!("exponent {exponent} does not divide order {order}"));
    }
    if r == 0 || r > order {
        return domain(format!("r = {r} outside 1..={order}"));
    }
    let outer = divisors(exponent)?;
    let mut set: Vec<usize> = divisors(order / exponent)?
        .into_iter()
        .filter(|&d1| d1 * exponent >= r)
        .flat_map(|d1| outer.iter().map(move |&d2| d1 * d2))
        .collect();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// One cyclic `Z/q` component, `q = p^c`, inside coordinate `coord`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PrimaryComponent {
    coord: usize,
    prime: usize,
    exp: u32,
    modulus: usize,
}

fn primary_components(g: &GroupSpec) -> Vec<PrimaryComponent> {
    g.factors
        .iter()
        .enumerate()
        .flat_map(|(coord, &n)| {
            factorize(n)
                .into_iter()
                .map(move |(prime, exp)| PrimaryComponent {
                    coord,
                    prime,
                    exp,
                    modulus: prime.pow(exp),
                })
        })
        .collect()
}

/// Invariant-factor form `d₁ | d₂ | … | d_m` (ascending), so the last factor
/// is the exponent.
pub fn invariant_factors(g: &GroupSpec) -> GroupSpec {
    let mut by_prime: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in primary_components(g) {
        match by_prime.iter_mut().find(|(p, _)| *p == c.prime) {
            Some((_, powers)) => powers.push(c.modulus),
            None => by_prime.push((c.prime, vec![c.modulus])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; len];
    for (_, powers) in &mut by_prime {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        // largest powers go to the last factor
        for (k, q) in powers.iter().enumerate() {
            factors[len - 1 - k] *= q;
        }
    }
    GroupSpec { factors }
}

/// An explicit isomorphism between two groups, stored as a permutation of
/// linear indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    domain: GroupSpec,
    codomain: GroupSpec,
    forward: Vec<usize>,
}

impl Isomorphism {
    pub fn domain(&self) -> &GroupSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupSpec {
        &self.codomain
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        let i = self.domain.index_of(a)?;
        Ok(self.codomain.element_unchecked(self.forward[i]))
    }

    pub fn apply_subset(&self, a: &GroupSubset) -> Result<GroupSubset> {
        if a.group() != &self.domain {
            return Err(Error::GroupMismatch {
                left: a.group().to_string(),
                right: self.domain.to_string(),
            });
        }
        GroupSubset::from_indices(&self.codomain, a.indices().map(|i| self.forward[i]))
    }
}

/// The isomorphism from `invariant_factors(g)` onto `g`.
///
/// Both groups split into the same multiset of prime-power cyclic
/// components; matching components are identified and each coordinate of
/// `g` is reassembled by the Chinese remainder theorem.
pub fn invariant_factor_isomorphism(g: &GroupSpec) -> Isomorphism {
    let h = invariant_factors(g);
    let key = |c: &PrimaryComponent| (c.prime, c.exp, c.coord);
    let mut src = primary_components(&h);
    let mut dst = primary_components(g);
    src.sort_by_key(key);
    dst.sort_by_key(key);
    debug_assert_eq!(src.len(), dst.len());

    let forward = (0..h.order())
        .map(|i| {
            let x = h.element_unchecked(i);
            let mut coords = vec![0usize; g.rank()];
            for (s, d) in src.iter().zip(&dst) {
                debug_assert_eq!(s.modulus, d.modulus);
                let residue = x.coords[s.coord] % s.modulus;
                let n = g.factors[d.coord];
                let cofactor = n / d.modulus;
                let inv = mod_inverse(cofactor % d.modulus, d.modulus);
                coords[d.coord] = (coords[d.coord] + residue * cofactor % n * inv) % n;
            }
            g.index_of(&Element::new(coords))
                .expect("CRT output is in range")
        })
        .collect();
    Isomorphism {
        domain: h,
        codomain: g.clone(),
        forward,
    }
}

fn mod_inverse(a: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} not invertible mod {m}");
    old_s.rem_euclid(m as i64) as usize
}

/// Per-coordinate orders of the subgroup chosen by [`subgroup_of_order`].
///
/// For each prime `p^a ∥ d` the exponent `a` is spread over the `p`-power
/// components of `g`, largest component first (ties: later coordinate
/// first); a component `Z/p^c` receiving `b` contributes `⟨p^{c-b}⟩`.
fn subgroup_coordinate_orders(g: &GroupSpec, d: usize) -> Result<Vec<usize>> {
    if d == 0 || !g.order().is_multiple_of(d) {
        return domain(format!("{d} does not divide the group order {}", g.order()));
    }
    let mut orders = vec![1usize; g.rank()];
    let mut components = primary_components(g);
    components.sort_by(|a, b| b.exp.cmp(&a.exp).then(b.coord.cmp(&a.coord)));
    for (p, mut remaining) in factorize(d) {
        for c in components.iter().filter(|c| c.prime == p) {
            let take = remaining.min(c.exp);
            orders[c.coord] *= p.pow(take);
            remaining -= take;
        }
        debug_assert_eq!(remaining, 0);
    }
    Ok(orders)
}

/// A subgroup of `g` with exactly `d` elements.
pub fn subgroup_of_order(g: &GroupSpec, d: usize) -> Result<GroupSubset> {
    let orders = subgroup_coordinate_orders(g, d)?;
    let mut members = vec![Vec::new()];
    for (&n, &o) in g.factors.iter().zip(&orders) {
        let step = n / o;
        members = members
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..o).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k * step);
                    v
                })
            })
            .collect();
    }
    let elements: Vec<Element> = members.into_iter().map(Element::new).collect();
    GroupSubset::from_elements(g, &elements)
}

/// Partitions of `n` into parts, each partition weakly decreasing, listed
/// with the largest first part first.
pub(crate) fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism class of abelian groups of order `n`.
///
/// Representatives list prime-power factors, primes ascending and powers
/// descending within a prime, e.g. `[4,3]` and `[2,2,3]` for `n = 12`.
pub fn enumerate_abelian_groups(n: usize) -> Vec<GroupSpec> {
    if n == 0 {
        return Vec::new();
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, a) in factorize(n) {
        let choices: Vec<Vec<usize>> = integer_partitions(a)
            .into_iter()
            .map(|parts| parts.into_iter().map(|e| p.pow(e)).collect())
            .collect();
        groups = groups
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |tail| {
                    let mut v = prefix.clone();
                    v.extend(tail);
                    v
                })
            })
            .collect();
    }
    groups
        .into_iter()
        .map(|factors| GroupSpec { factors })
        .collect()
}
