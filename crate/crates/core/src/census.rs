//! Exhaustive sweeps over normalized TD/D data of diameter one and two,
//! comparing the closed-form predicates with the matrix routes.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::flat::flat_part;
use crate::params::{realize_matrices, TddSequence};
use crate::small::{leonard_d1, leonard_d2};
use crate::verify::{verify_leonard_pair, MatrixPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census needs a prime field, got {0}")]
    NotPrimeField(Field),
}

/// Mismatch counts by check, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub field: Field,
    pub d: usize,
    pub tuples: u64,
    pub leonard: u64,
    pub checks: Vec<(&'static str, u64)>,
    pub first_mismatch: Option<String>,
}

impl CensusReport {
    pub fn mismatches(&self) -> u64 {
        self.checks.iter().map(|(_, n)| n).sum()
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.mismatches();
        if m == 0 {
            write!(f, "predicate==oracle on all {} admissible tuples; mismatches=0", self.tuples)?;
        } else {
            write!(f, "predicate!=oracle on some of {} admissible tuples; mismatches={m}", self.tuples)?;
        }
        write!(f, "\nfield={}; d={}; leonard={}", self.field, self.d, self.leonard)?;
        for (name, n) in &self.checks {
            write!(f, "\n{name}: mismatches={n}")?;
        }
        if let Some(t) = &self.first_mismatch {
            write!(f, "\nfirst mismatch: {t}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    tuples: u64,
    leonard: u64,
    counts: Vec<u64>,
    first: Option<String>,
}

impl Tally {
    fn new(n: usize) -> Tally {
        Tally { counts: vec![0; n], ..Tally::default() }
    }

    fn check(&mut self, k: usize, ok: bool, tuple: impl FnOnce() -> String) {
        if !ok {
            self.counts[k] += 1;
            if self.first.is_none() {
                self.first = Some(tuple());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.tuples += other.tuples;
        self.leonard += other.leonard;
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.first = self.first.or(other.first);
        self
    }

    fn report(self, field: Field, d: usize, names: &[&'static str]) -> CensusReport {
        CensusReport {
            field,
            d,
            tuples: self.tuples,
            leonard: self.leonard,
            checks: names.iter().copied().zip(self.counts).collect(),
            first_mismatch: self.first,
        }
    }
}

fn elements(field: Field) -> Result<Vec<Scalar>, CensusError> {
    field.elements().ok_or(CensusError::NotPrimeField(field))
}

fn pair_of(a: &[Scalar], x: &[Scalar], ths: &[Scalar]) -> MatrixPair {
    realize_matrices(&TddSequence::new(a.to_vec(), x.to_vec(), ths.to_vec()).expect("admissible tuple"))
}

fn describe(a: &[Scalar], x: &[Scalar], ths: &[Scalar]) -> String {
    let j = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
    format!("a=({}); x=({}); thetastar=({})", j(a), j(x), j(ths))
}

// Leonard pair over the field, with A - F = zero-diagonal B checked on the way.
fn leonard_with_flat(pair: &MatrixPair, b: &MatrixPair) -> (bool, bool, bool) {
    match flat_part(pair) {
        Ok(fp) => (true, fp.matrix.is_zero(), pair.a.sub(&fp.matrix) == b.a),
        Err(_) => (false, false, true),
    }
}

const D1_CHECKS: [&str; 4] = ["leonard", "bipartite", "contraction_leonard", "near_bipartite"];

/// Every (a0, a1, x1 ≠ 0, θ*0 ≠ θ*1).
pub fn census_d1(field: Field) -> Result<CensusReport, CensusError> {
    let els = elements(field)?;
    let shard = |a0: &Scalar| {
        let mut t = Tally::new(D1_CHECKS.len());
        for x1 in els.iter().filter(|x| !x.is_zero()) {
            for s0 in &els {
                for s1 in els.iter().filter(|s| *s != s0) {
                    let x = [x1.clone()];
                    let ths = [s0.clone(), s1.clone()];
                    let b = pair_of(&[field.zero(), field.zero()], &x, &ths);
                    let b_leonard = verify_leonard_pair(&b).is_leonard();
                    for a1 in &els {
                        let a = [a0.clone(), a1.clone()];
                        let who = || describe(&a, &x, &ths);
                        t.tuples += 1;
                        let c = leonard_d1(a0, a1, x1, s0, s1);
                        let pair = pair_of(&a, &x, &ths);
                        let (leonard, bipartite, flat_ok) = leonard_with_flat(&pair, &b);
                        t.leonard += leonard as u64;
                        t.check(0, c.leonard == leonard && flat_ok, who);
                        t.check(1, c.bipartite == bipartite, who);
                        t.check(2, c.contraction_leonard == b_leonard, who);
                        t.check(3, c.near_bipartite == leonard.then_some(b_leonard), who);
                    }
                }
            }
        }
        t
    };
    let total = els.par_iter().map(shard).collect::<Vec<_>>().into_iter().fold(Tally::new(D1_CHECKS.len()), Tally::merge);
    Ok(total.report(field, 1, &D1_CHECKS))
}

const D2_CHECKS: [&str; 5] = ["leonard", "bipartite", "contraction_leonard", "near_bipartite", "expansion"];

/// Every (a0, a1, a2, x1 ≠ 0, x2 ≠ 0, distinct θ*0, θ*1, θ*2). Shards by a0.
pub fn census_d2(field: Field) -> Result<CensusReport, CensusError> {
    let els = elements(field)?;
    let nz: Vec<&Scalar> = els.iter().filter(|x| !x.is_zero()).collect();
    let mut dual = Vec::new();
    for s0 in &els {
        for s1 in els.iter().filter(|s| *s != s0) {
            for s2 in els.iter().filter(|s| *s != s0 && *s != s1) {
                dual.push([s0.clone(), s1.clone(), s2.clone()]);
            }
        }
    }
    let zero3 = [field.zero(), field.zero(), field.zero()];
    let shard = |a0: &Scalar| {
        let mut t = Tally::new(D2_CHECKS.len());
        for x1 in &nz {
            for x2 in &nz {
                let x = [(*x1).clone(), (*x2).clone()];
                for ths in &dual {
                    // B depends only on (x, θ*)
                    let b = pair_of(&zero3, &x, ths);
                    let b_leonard = verify_leonard_pair(&b).is_leonard();
                    for a1 in &els {
                        for a2 in &els {
                            let a = [a0.clone(), a1.clone(), a2.clone()];
                            let who = || describe(&a, &x, ths);
                            t.tuples += 1;
                            let c = leonard_d2(&a, &x, ths);
                            let pair = pair_of(&a, &x, ths);
                            let (leonard, bipartite, flat_ok) = leonard_with_flat(&pair, &b);
                            t.leonard += leonard as u64;
                            t.check(0, c.leonard == leonard && flat_ok, who);
                            t.check(1, c.bipartite == bipartite, who);
                            t.check(2, c.contraction_leonard == b_leonard, who);
                            t.check(3, c.near_bipartite == leonard.then_some(b_leonard), who);
                            t.check(4, c.expansion == b_leonard.then_some(leonard), who);
                        }
                    }
                }
            }
        }
        t
    };
    let total = els.par_iter().map(shard).collect::<Vec<_>>().into_iter().fold(Tally::new(D2_CHECKS.len()), Tally::merge);
    Ok(total.report(field, 2, &D2_CHECKS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_over_gf3() {
        let r = census_d1(Field::prime(3).unwrap()).unwrap();
        assert_eq!(r.tuples, 9 * 2 * 3 * 2);
        assert_eq!(r.mismatches(), 0, "{r}");
        assert!(r.leonard > 0);
    }

    #[test]
    fn d2_over_gf3() {
        let r = census_d2(Field::prime(3).unwrap()).unwrap();
        assert_eq!(r.tuples, 27 * 4 * 6);
        assert_eq!(r.mismatches(), 0, "{r}");
    }

    #[test]
    fn rationals_rejected() {
        assert_eq!(census_d1(Field::Rationals), Err(CensusError::NotPrimeField(Field::Rationals)));
    }
}
