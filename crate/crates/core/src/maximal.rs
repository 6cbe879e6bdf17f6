//! Maximal Diophantine graphs `D_n`, maximal graphs for arbitrary label
//! compatibility rules, and closed forms for the invariants of `D_n`.
//!
//! In `D_n` the vertex labeled `a` is joined to `b` iff `gcd(a, b) | n`.
//! Equivalently, `a` and `b` are non-adjacent iff some critical prime power
//! `p^(v_p(n)+1)` divides both. The adjacency is always generated from the gcd
//! rule; the critical-power description backs the closed forms and is checked
//! against the built graph.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph, LabeledGraph};
use crate::numtheory::{self, PrimeTable};
use crate::solver::{self, Exact, ExactOptions};
use crate::Label;

/// Largest `n` accepted by [`build_dn`].
pub const DEFAULT_BUILD_CAP: Label = 20_000;
/// Largest `n` for which [`profile_with`] cross-checks with exact solvers by default.
pub const DEFAULT_AUDIT_CAP: Label = 120;

/// Symmetric compatibility predicate over a finite label universe. The
/// maximal graph of a rule joins exactly the compatible label pairs.
pub trait LabelRule {
    type Label: Clone + Eq + Hash + Debug;

    fn universe(&self) -> &[Self::Label];

    fn compatible(&self, a: &Self::Label, b: &Self::Label) -> bool;

    fn order(&self) -> usize {
        self.universe().len()
    }
}

/// Labels `1..=n`, compatible when their gcd divides `n`.
#[derive(Debug, Clone)]
pub struct DiophantineRule {
    n: Label,
    universe: Vec<Label>,
}

impl DiophantineRule {
    pub fn new(n: Label) -> Self {
        DiophantineRule {
            n,
            universe: (1..=n).collect(),
        }
    }

    pub fn modulus(&self) -> Label {
        self.n
    }
}

impl LabelRule for DiophantineRule {
    type Label = Label;

    fn universe(&self) -> &[Label] {
        &self.universe
    }

    fn compatible(&self, a: &Label, b: &Label) -> bool {
        self.n.is_multiple_of(a.gcd(b))
    }
}

/// Labels `1..=n`, compatible when coprime (prime labeling).
#[derive(Debug, Clone)]
pub struct CoprimeRule {
    universe: Vec<Label>,
}

impl CoprimeRule {
    pub fn new(n: Label) -> Self {
        CoprimeRule {
            universe: (1..=n).collect(),
        }
    }
}

impl LabelRule for CoprimeRule {
    type Label = Label;

    fn universe(&self) -> &[Label] {
        &self.universe
    }

    fn compatible(&self, a: &Label, b: &Label) -> bool {
        a.gcd(b) == 1
    }
}

/// A rule given by an arbitrary closure. The closure must be symmetric.
pub struct PredicateRule<L, F> {
    universe: Vec<L>,
    predicate: F,
}

impl<L, F> PredicateRule<L, F>
where
    L: Clone + Eq + Hash + Debug,
    F: Fn(&L, &L) -> bool,
{
    pub fn new(universe: Vec<L>, predicate: F) -> Result<Self> {
        let mut seen = HashSet::new();
        if !universe.iter().all(|l| seen.insert(l)) {
            return Err(Error::Argument("label universe has duplicates".into()));
        }
        Ok(PredicateRule {
            universe,
            predicate,
        })
    }
}

impl<L, F> LabelRule for PredicateRule<L, F>
where
    L: Clone + Eq + Hash + Debug,
    F: Fn(&L, &L) -> bool,
{
    type Label = L;

    fn universe(&self) -> &[L] {
        &self.universe
    }

    fn compatible(&self, a: &L, b: &L) -> bool {
        (self.predicate)(a, b)
    }
}

/// One vertex per label, joined exactly where the rule allows.
pub fn build_maximal_gamma<R: LabelRule>(rule: &R) -> LabeledGraph<R::Label> {
    let universe = rule.universe();
    let graph = Graph::from_fn(universe.len(), |a, b| {
        rule.compatible(&universe[a - 1], &universe[b - 1])
    });
    LabeledGraph::new(graph, universe.to_vec()).expect("rule universes are duplicate-free")
}

/// `D_n` with the identity labeling, under [`DEFAULT_BUILD_CAP`].
pub fn build_dn(n: Label) -> Result<LabeledGraph> {
    build_dn_with_cap(n, DEFAULT_BUILD_CAP)
}

pub fn build_dn_with_cap(n: Label, cap: Label) -> Result<LabeledGraph> {
    if n == 0 {
        return Err(Error::Argument("D_n needs n >= 1".into()));
    }
    if n > cap {
        return Err(Error::Resource(format!("n = {n} exceeds the build cap {cap}")));
    }
    Ok(build_maximal_gamma(&DiophantineRule::new(n)))
}

fn check_label(n: Label, a: Label) {
    assert!(a >= 1 && a <= n, "label {a} outside 1..={n}");
}

/// `p^(v_p(n)+1)` for a prime `p`, or `None` on overflow.
fn critical_power(p: Label, n: Label) -> Option<Label> {
    let v = numtheory::valuation_unchecked(p, n);
    p.checked_pow(v + 1)
}

/// Prime `p` whose critical power divides both `a` and `b`, if any. Such a
/// prime exists iff `a` and `b` are non-adjacent in `D_n`.
pub fn nonadjacency_witness(n: Label, a: Label, b: Label) -> Option<Label> {
    check_label(n, a);
    check_label(n, b);
    assert_ne!(a, b, "witness requested for a single label");
    let g = a.gcd(&b);
    numtheory::factorize(g)
        .pairs()
        .iter()
        .find(|&&(p, e)| e > numtheory::valuation_unchecked(p, n))
        .map(|&(p, _)| p)
}

/// Whether `a` is a critical prime power for `n`, i.e. `a = p^(v_p(n)+1)`.
pub fn is_critical_prime_power(n: Label, a: Label) -> bool {
    let f = numtheory::factorize(a);
    match f.pairs() {
        [(p, e)] => *e == numtheory::valuation_unchecked(*p, n) + 1,
        _ => false,
    }
}

/// Whether the vertex labeled `a` has full degree in `D_n`: either `a | n`,
/// or `a` is a critical prime power strictly between `n/2` and `n`. The two
/// cases never overlap.
pub fn is_full_degree_label(n: Label, a: Label) -> bool {
    check_label(n, a);
    let divides = n.is_multiple_of(a);
    let large_critical = 2 * a > n && a < n && is_critical_prime_power(n, a);
    assert!(!(divides && large_critical), "label {a} is both a divisor and a critical power of {n}");
    divides ^ large_critical
}

/// `f*(a) = a / gcd(a, n)`.
pub fn reduced_label(n: Label, a: Label) -> Label {
    check_label(n, a);
    a / a.gcd(&n)
}

/// `n - Σ⌊n/c_i⌋ + Σ⌊n/(c_i c_j)⌋ - ...` over the given divisors, counting the
/// integers in `1..=n` divisible by none of them. Products above `n` add nothing
/// and are pruned; `divisors` must be ascending.
fn count_coprime_to_all(n: Label, divisors: &[Label]) -> Label {
    fn walk(n: Label, divisors: &[Label], product: Label, depth: usize, plus: &mut Label, minus: &mut Label) {
        for (i, &c) in divisors.iter().enumerate() {
            let Some(next) = product.checked_mul(c).filter(|&q| q <= n) else {
                break;
            };
            if depth.is_multiple_of(2) {
                *minus += n / next;
            } else {
                *plus += n / next;
            }
            walk(n, &divisors[i + 1..], next, depth + 1, plus, minus);
        }
    }
    let (mut plus, mut minus) = (0, 0);
    walk(n, divisors, 1, 0, &mut plus, &mut minus);
    n + plus - minus
}

/// Ascending critical prime powers strictly below `n/2`, from a local sieve
/// over `2..n/2`.
pub fn critical_powers_below_half(n: Label) -> Vec<Label> {
    let half = (n / 2) as usize;
    let mut composite = vec![false; half + 1];
    let mut out = Vec::new();
    for p in 2..=half {
        if composite[p] {
            continue;
        }
        let mut j = p * p;
        while j <= half {
            composite[j] = true;
            j += p;
        }
        if let Some(c) = critical_power(p as Label, n).filter(|&c| 2 * c < n) {
            out.push(c);
        }
    }
    out.sort_unstable();
    out
}

/// Full-degree count of `D_n` by inclusion–exclusion over the critical prime
/// powers below `n/2`.
pub fn full_degree_count_ie(n: Label) -> Label {
    assert!(n >= 1);
    count_coprime_to_all(n, &critical_powers_below_half(n))
}

fn pi(table: &PrimeTable, x: Label) -> Result<Label> {
    Ok(table.prime_pi(x)? as Label)
}

/// `F(D_n) = τ(n) + π(n−1) − π(n/2) + γ_{n/2}(n)`.
pub fn full_degree_count_closed(n: Label, table: &PrimeTable) -> Result<Label> {
    assert!(n >= 1);
    let tau = numtheory::tau(n) as Label;
    let gamma = numtheory::gamma_x(Ratio::new(n, 2), n)? as Label;
    Ok(tau + pi(table, n - 1)? - pi(table, n / 2)? + gamma)
}

/// `Cl(D_n) = τ(n) + π(n) − ω(n) + γ_1(n)`, with `Cl(D_1) = 1`.
pub fn clique_number_closed(n: Label, table: &PrimeTable) -> Result<Label> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(1);
    }
    let tau = numtheory::tau(n) as Label;
    let omega = numtheory::omega(n) as Label;
    let gamma = numtheory::gamma_x(Ratio::from_integer(1), n)? as Label;
    Ok(tau + pi(table, n)? - omega + gamma)
}

/// `α(D_n) = max_p ⌊n / p^(v_p(n)+1)⌋` over primes `p ≤ n`, floored at 1
/// (the maximum is 0 for `n = 2`, where `D_2 = K_2`).
pub fn independence_number_closed(n: Label, table: &PrimeTable) -> Result<Label> {
    assert!(n >= 1);
    let best = table
        .primes_up_to(n)?
        .iter()
        .filter_map(|&p| critical_power(p, n))
        .map(|c| n / c)
        .max()
        .unwrap_or(0);
    Ok(best.max(1))
}

/// `D_n` is complete iff every prime `p ≤ n/2` divides `n` with critical power above `n/2`.
pub fn is_complete_dn(n: Label, table: &PrimeTable) -> Result<bool> {
    assert!(n >= 1);
    Ok(table.primes_up_to(n / 2)?.iter().all(|&p| {
        n.is_multiple_of(p) && critical_power(p, n).is_none_or(|c| 2 * c > n)
    }))
}

/// Degree of the vertex labeled `a` in `D_n`, by inclusion–exclusion over the
/// critical powers of the primes of the reduced label.
pub fn degree_of_label(n: Label, a: Label) -> Label {
    let reduced = reduced_label(n, a);
    if reduced == 1 {
        return n - 1;
    }
    let mut powers: Vec<Label> = numtheory::factorize(reduced)
        .primes()
        .map(|p| critical_power(p, n).expect("critical power divides a <= n"))
        .collect();
    powers.sort_unstable();
    count_coprime_to_all(n, &powers)
}

/// Degrees of labels `1..=n` in `D_n`.
pub fn label_degrees(n: Label) -> Vec<Label> {
    (1..=n).map(|a| degree_of_label(n, a)).collect()
}

/// `|E(D_n)|` as half the degree sum.
pub fn edge_count(n: Label) -> Label {
    label_degrees(n).iter().sum::<Label>() / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinLabelResult {
    /// Smallest label among minimum-degree vertices.
    pub min_label: Label,
    /// A minimum-degree label in `(n/2, n)`: `min_label` doubled until it lands there.
    pub witness_high_label: Label,
    /// Number of critical prime powers multiplied into `min_label`.
    pub r: usize,
    pub factors: Vec<Label>,
    pub min_degree: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum MinLabelOutcome {
    /// `D_n` is complete, every label has degree `n - 1` and the minimum label is 1.
    Complete,
    Found(MinLabelResult),
    /// The prefix-product formula disagrees with the scan over all labels.
    TheoremMismatch {
        scanned_label: Label,
        formula_label: Label,
        min_degree: Label,
    },
}

/// Minimum-degree vertex with minimum label. The label is the product of the
/// `r` smallest critical prime powers below `n/2`, where `r` is the longest
/// prefix whose product stays below `n`. This is cross-checked against a scan
/// of every label's degree.
pub fn min_degree_min_label(n: Label, table: &PrimeTable) -> Result<MinLabelOutcome> {
    if is_complete_dn(n, table)? {
        return Ok(MinLabelOutcome::Complete);
    }
    let degrees = label_degrees(n);
    let min_degree = *degrees.iter().min().expect("n >= 1");
    let scanned = degrees.iter().position(|&d| d == min_degree).unwrap() as Label + 1;

    let powers = critical_powers_below_half(n);
    let mut product: Label = 1;
    let mut factors = Vec::new();
    for &c in &powers {
        match product.checked_mul(c) {
            Some(next) if next < n => {
                product = next;
                factors.push(c);
            }
            _ => break,
        }
    }
    let mismatch = MinLabelOutcome::TheoremMismatch {
        scanned_label: scanned,
        formula_label: product,
        min_degree,
    };
    if factors.is_empty() || product != scanned {
        return Ok(mismatch);
    }

    let mut witness = scanned;
    while 2 * witness <= n {
        witness *= 2;
    }
    if witness >= n || degrees[witness as usize - 1] != min_degree {
        return Ok(mismatch);
    }
    Ok(MinLabelOutcome::Found(MinLabelResult {
        min_label: scanned,
        witness_high_label: witness,
        r: factors.len(),
        factors,
        min_degree,
    }))
}

/// The invariants of `D_n` tabulated side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DnProfile {
    pub n: Label,
    pub edge_count: Label,
    pub full_degree_count: Label,
    pub clique_number: Label,
    pub independence_number: Label,
    pub min_degree: Label,
    pub degree_sequence: DegreeSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<ProfileAudit>,
}

/// Comparison of a closed-form profile against the built graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileAudit {
    pub clique_number_exact: Exact,
    pub independence_number_exact: Exact,
    /// Fields whose closed form disagrees with the graph; empty when consistent.
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Run the exact solvers when `n` is at most this.
    pub audit_cap: Label,
    pub exact: ExactOptions,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            audit_cap: DEFAULT_AUDIT_CAP,
            exact: ExactOptions::default().max_order(DEFAULT_AUDIT_CAP as usize),
        }
    }
}

/// Closed-form profile of `D_n`; no graph is built.
pub fn profile(n: Label, table: &PrimeTable) -> Result<DnProfile> {
    if n == 0 {
        return Err(Error::Argument("D_n needs n >= 1".into()));
    }
    let degrees = label_degrees(n);
    let mut counts = vec![0usize; n as usize];
    for &d in &degrees {
        counts[d as usize] += 1;
    }
    Ok(DnProfile {
        n,
        edge_count: degrees.iter().sum::<Label>() / 2,
        full_degree_count: full_degree_count_closed(n, table)?,
        clique_number: clique_number_closed(n, table)?,
        independence_number: independence_number_closed(n, table)?,
        min_degree: *degrees.iter().min().expect("n >= 1"),
        degree_sequence: DegreeSequence::new(counts),
        audit: None,
    })
}

/// [`profile`], plus an audit against the built `D_n` when `n <= audit_cap`.
pub fn profile_with(n: Label, table: &PrimeTable, opts: &ProfileOptions) -> Result<DnProfile> {
    let mut p = profile(n, table)?;
    if n <= opts.audit_cap {
        p.audit = Some(audit(&p, &opts.exact)?);
    }
    Ok(p)
}

/// Builds `D_n` and checks every field of `p` against it.
pub fn audit(p: &DnProfile, exact: &ExactOptions) -> Result<ProfileAudit> {
    let dn = build_dn(p.n)?;
    let g = dn.graph();
    let clique = solver::clique_number_exact(g, exact)?;
    let independence = solver::independence_number_exact(g, exact)?;
    let mut mismatches = Vec::new();
    let mut check = |name: &str, closed: Label, actual: Option<Label>| {
        if let Some(actual) = actual {
            if closed != actual {
                mismatches.push(format!("{name}: closed form {closed}, graph {actual}"));
            }
        }
    };
    check("edge_count", p.edge_count, Some(g.edge_count() as Label));
    check("full_degree_count", p.full_degree_count, Some(g.full_degree_count() as Label));
    check("min_degree", p.min_degree, Some(g.min_degree() as Label));
    check("clique_number", p.clique_number, clique.value().map(|v| v as Label));
    check("independence_number", p.independence_number, independence.value().map(|v| v as Label));
    if g.degree_sequence() != p.degree_sequence {
        mismatches.push(format!(
            "degree_sequence: closed form {}, graph {}",
            p.degree_sequence,
            g.degree_sequence()
        ));
    }
    Ok(ProfileAudit {
        clique_number_exact: clique,
        independence_number_exact: independence,
        mismatches,
    })
}
