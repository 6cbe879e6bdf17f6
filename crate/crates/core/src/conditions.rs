//! Necessary conditions C1–C6 and the independence-number sufficient condition
//! for a graph to admit a Diophantine labeling, evaluated against `D_n` of the
//! same order.
//!
//! | | condition |
//! |---|---|
//! | C1 | `\|E(G)\| ≤ \|E(D_n)\|` |
//! | C2 | `F(G) ≤ F(D_n)` |
//! | C3 | `Cl(G) ≤ Cl(D_n)` |
//! | C4 | `α(G) ≥ α(D_n)` |
//! | C5 | `δ(G) ≤ δ(D_n)` |
//! | C6 | `Σ_{i≤k} g_i ≥ Σ_{i≤k} d_i` for every `k` |
//!
//! The sufficient condition is `α(G) ≥ n − F(D_n)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};
use crate::maximal::{self, DnProfile};
use crate::numtheory::PrimeTable;
use crate::solver::{self, ExactOptions};
use crate::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// An exact solver ran out of budget or the graph exceeded its order cap.
    Unknown,
    /// Not evaluated because an earlier condition already failed (early exit).
    Skipped,
}

/// One comparison: `lhs` is the value for `G`, `rhs` the bound from `D_n`.
/// For C6 the values are the partial sums at the first shortfall `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub verdict: Verdict,
    pub lhs: Option<Label>,
    pub rhs: Option<Label>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl ConditionCheck {
    fn compare(lhs: Label, rhs: Label, ok: bool) -> Self {
        ConditionCheck {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            lhs: Some(lhs),
            rhs: Some(rhs),
            k: None,
        }
    }

    fn unknown(rhs: Label) -> Self {
        ConditionCheck {
            verdict: Verdict::Unknown,
            lhs: None,
            rhs: Some(rhs),
            k: None,
        }
    }

    fn skipped() -> Self {
        ConditionCheck {
            verdict: Verdict::Skipped,
            lhs: None,
            rhs: None,
            k: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    PossiblyDiophantine,
    NotDiophantine,
    DiophantineBySufficiency,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub n: Label,
    pub c1: ConditionCheck,
    pub c2: ConditionCheck,
    pub c3: ConditionCheck,
    pub c4: ConditionCheck,
    pub c5: ConditionCheck,
    pub c6: ConditionCheck,
    pub sufficient: ConditionCheck,
    pub overall: Overall,
    pub degree_sequence: DegreeSequence,
    pub dn_degree_sequence: DegreeSequence,
}

impl ConditionReport {
    /// Conditions in C1..C6 order.
    pub fn conditions(&self) -> [(&'static str, &ConditionCheck); 6] {
        [
            ("C1", &self.c1),
            ("C2", &self.c2),
            ("C3", &self.c3),
            ("C4", &self.c4),
            ("C5", &self.c5),
            ("C6", &self.c6),
        ]
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.conditions()
            .into_iter()
            .filter(|(_, c)| c.failed())
            .map(|(name, _)| name)
            .collect()
    }

    pub fn has_unknown(&self) -> bool {
        self.conditions()
            .iter()
            .chain(std::iter::once(&("S", &self.sufficient)))
            .any(|(_, c)| c.verdict == Verdict::Unknown)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    pub exact: ExactOptions,
    /// Stop at the first failing condition; later ones are reported as skipped.
    pub early_exit: bool,
}

fn as_label(v: usize) -> Label {
    v as Label
}

fn exact_value(result: Result<solver::Exact>) -> Result<Option<Label>> {
    match result {
        Ok(e) => Ok(e.value().map(as_label)),
        Err(Error::Resource(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn dominance(g: &DegreeSequence, d: &DegreeSequence) -> ConditionCheck {
    match g.first_shortfall(d) {
        None => ConditionCheck {
            verdict: Verdict::Pass,
            lhs: None,
            rhs: None,
            k: None,
        },
        Some(k) => ConditionCheck {
            verdict: Verdict::Fail,
            lhs: Some(as_label(g.partial_sums()[k])),
            rhs: Some(as_label(d.partial_sums()[k])),
            k: Some(k),
        },
    }
}

/// Evaluates C1–C6 and the sufficient condition. Cheap conditions go first:
/// C1, C5, C2, C6, then the exact-solver ones C4 and C3.
pub fn check_conditions(g: &Graph, table: &PrimeTable, opts: &CheckOptions) -> Result<ConditionReport> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Argument("conditions need a graph with at least one vertex".into()));
    }
    let dn = maximal::profile(as_label(n), table)?;
    check_against(g, &dn, opts)
}

/// As [`check_conditions`], with a precomputed profile of `D_n`, `n = |V(G)|`.
pub fn check_against(g: &Graph, dn: &DnProfile, opts: &CheckOptions) -> Result<ConditionReport> {
    if as_label(g.order()) != dn.n {
        return Err(Error::Argument(format!(
            "graph order {} does not match D_{}",
            g.order(),
            dn.n
        )));
    }
    let seq = g.degree_sequence();
    let mut stopped = false;
    let mut run = |eval: &mut dyn FnMut() -> Result<ConditionCheck>| -> Result<ConditionCheck> {
        if stopped {
            return Ok(ConditionCheck::skipped());
        }
        let c = eval()?;
        stopped = opts.early_exit && c.failed();
        Ok(c)
    };

    let edges = as_label(g.edge_count());
    let c1 = run(&mut || Ok(ConditionCheck::compare(edges, dn.edge_count, edges <= dn.edge_count)))?;
    let delta = as_label(g.min_degree());
    let c5 = run(&mut || Ok(ConditionCheck::compare(delta, dn.min_degree, delta <= dn.min_degree)))?;
    let full = as_label(g.full_degree_count());
    let c2 = run(&mut || {
        Ok(ConditionCheck::compare(full, dn.full_degree_count, full <= dn.full_degree_count))
    })?;
    let c6 = run(&mut || Ok(dominance(&seq, &dn.degree_sequence)))?;

    let mut alpha = None;
    let c4 = run(&mut || {
        alpha = exact_value(solver::independence_number_exact(g, &opts.exact))?;
        Ok(match alpha {
            Some(a) => ConditionCheck::compare(a, dn.independence_number, a >= dn.independence_number),
            None => ConditionCheck::unknown(dn.independence_number),
        })
    })?;
    let c3 = run(&mut || {
        Ok(match exact_value(solver::clique_number_exact(g, &opts.exact))? {
            Some(c) => ConditionCheck::compare(c, dn.clique_number, c <= dn.clique_number),
            None => ConditionCheck::unknown(dn.clique_number),
        })
    })?;
    let sufficient = run(&mut || {
        let a = match alpha {
            Some(a) => Some(a),
            None if c4.verdict == Verdict::Skipped => {
                exact_value(solver::independence_number_exact(g, &opts.exact))?
            }
            None => None,
        };
        Ok(sufficient_check(a, dn))
    })?;

    let any_failed = [&c1, &c2, &c3, &c4, &c5, &c6].iter().any(|c| c.failed());
    let overall = if any_failed {
        Overall::NotDiophantine
    } else if sufficient.passed() {
        Overall::DiophantineBySufficiency
    } else {
        Overall::PossiblyDiophantine
    };
    Ok(ConditionReport {
        n: dn.n,
        c1,
        c2,
        c3,
        c4,
        c5,
        c6,
        sufficient,
        overall,
        degree_sequence: seq,
        dn_degree_sequence: dn.degree_sequence.clone(),
    })
}

fn sufficient_check(alpha: Option<Label>, dn: &DnProfile) -> ConditionCheck {
    let bound = dn.n - dn.full_degree_count;
    match alpha {
        Some(a) => ConditionCheck::compare(a, bound, a >= bound),
        None => ConditionCheck::unknown(bound),
    }
}

/// `α(G) ≥ n − F(D_n)`; passing guarantees a Diophantine labeling exists.
pub fn check_sufficient(g: &Graph, table: &PrimeTable, exact: &ExactOptions) -> Result<ConditionCheck> {
    let n = as_label(g.order());
    if n == 0 {
        return Err(Error::Argument("sufficient condition needs a nonempty graph".into()));
    }
    let full = maximal::full_degree_count_closed(n, table)?;
    let dn = DnProfile {
        n,
        edge_count: 0,
        full_degree_count: full,
        clique_number: 0,
        independence_number: 0,
        min_degree: 0,
        degree_sequence: DegreeSequence::new(Vec::new()),
        audit: None,
    };
    let alpha = exact_value(solver::independence_number_exact(g, exact))?;
    Ok(sufficient_check(alpha, &dn))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(1000).unwrap()
    }

    #[test]
    fn g2_fails_c5_and_c6() {
        let g2 = Graph::join(&Graph::cycle(4).unwrap(), &Graph::null(3));
        let r = check_conditions(&g2, &table(), &CheckOptions::default()).unwrap();
        assert_eq!(r.failed(), vec!["C5", "C6"]);
        assert_eq!((r.c5.lhs, r.c5.rhs), (Some(4), Some(3)));
        assert_eq!((r.c6.k, r.c6.lhs, r.c6.rhs), (Some(3), Some(0), Some(1)));
        assert_eq!(r.overall, Overall::NotDiophantine);
    }

    #[test]
    fn g4_fails_c2_and_c6() {
        let g4 = Graph::join(&Graph::complete(4), &Graph::null(7));
        let r = check_conditions(&g4, &table(), &CheckOptions::default()).unwrap();
        assert_eq!(r.failed(), vec!["C2", "C6"]);
        assert_eq!(r.c6.k, Some(9));
    }

    #[test]
    fn early_exit_skips_the_rest() {
        let g2 = Graph::join(&Graph::cycle(4).unwrap(), &Graph::null(3));
        let opts = CheckOptions {
            early_exit: true,
            ..CheckOptions::default()
        };
        let r = check_conditions(&g2, &table(), &opts).unwrap();
        assert!(r.c1.passed() && r.c5.failed());
        for c in [&r.c2, &r.c3, &r.c4, &r.c6, &r.sufficient] {
            assert_eq!(c.verdict, Verdict::Skipped);
        }
        assert_eq!(r.overall, Overall::NotDiophantine);
    }

    #[test]
    fn sufficiency() {
        let t = table();
        let exact = ExactOptions::default();
        let g = Graph::join(&Graph::complete(3), &Graph::null(4));
        let s = check_sufficient(&g, &t, &exact).unwrap();
        assert_eq!((s.verdict, s.lhs, s.rhs), (Verdict::Pass, Some(4), Some(4)));
        let d7 = maximal::build_dn(7).unwrap();
        let s = check_sufficient(d7.graph(), &t, &exact).unwrap();
        assert_eq!((s.verdict, s.lhs, s.rhs), (Verdict::Fail, Some(3), Some(4)));
        assert!(check_sufficient(&Graph::null(1), &t, &exact).unwrap().passed());
        let r = check_conditions(&g, &t, &CheckOptions::default()).unwrap();
        assert_eq!(r.overall, Overall::DiophantineBySufficiency);
    }

    #[test]
    fn exhausted_budget_is_unknown_not_fail() {
        let t = table();
        // a sparse pseudo-random graph passes C1, C2, C5 and C6 against D_60
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let g = Graph::from_fn(60, |_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state.is_multiple_of(5)
        });
        let opts = CheckOptions {
            exact: ExactOptions::with_budget(1),
            early_exit: false,
        };
        let r = check_conditions(&g, &t, &opts).unwrap();
        assert_eq!(r.c3.verdict, Verdict::Unknown);
        assert_eq!(r.c4.verdict, Verdict::Unknown);
        assert_eq!(r.sufficient.verdict, Verdict::Unknown);
        assert!(r.failed().is_empty(), "{:?}", r.failed());
        assert!(r.has_unknown());
        assert_eq!(r.overall, Overall::PossiblyDiophantine);

        let big = Graph::null(70);
        let r = check_conditions(&big, &PrimeTable::new(100).unwrap(), &CheckOptions::default()).unwrap();
        assert_eq!(r.c4.verdict, Verdict::Unknown);
    }
}
