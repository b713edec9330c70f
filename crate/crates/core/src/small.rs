//! Closed-form classification for diameters one and two, in normalized
//! TD/D form (A tridiagonal with subdiagonal 1, A* diagonal).
//!
//! Each predicate comes in two flavours. The `closed_*` flags are the
//! conditions valid over an algebraically closed field; the plain flags add
//! the requirement that the relevant eigenvalues lie in the base field, so
//! they can be compared directly with [`crate::verify_leonard_pair`].

use crate::field::Scalar;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification1 {
    pub leonard: bool,
    /// Eigenvalues of A when they lie in the field.
    pub eigenvalues: Option<Vec<Scalar>>,
    /// Leonard with a_0 = a_1 = 0.
    pub bipartite: bool,
    /// The zero-diagonal pair B, A* is Leonard.
    pub contraction_leonard: bool,
    /// Defined only for Leonard pairs.
    pub near_bipartite: Option<bool>,
    pub closed_leonard: bool,
    pub closed_contraction_leonard: bool,
}

/// Diameter one: A = [[a0, x1], [1, a1]], A* = diag(ths0, ths1).
pub fn leonard_d1(a0: &Scalar, a1: &Scalar, x1: &Scalar, ths0: &Scalar, ths1: &Scalar) -> Classification1 {
    let f = a0.field();
    let base = !x1.is_zero() && ths0 != ths1;
    let disc = (a0 - a1).square() + f.int(4) * x1;
    let closed_leonard = base && !disc.is_zero();
    // λ² - (a0 + a1)λ + a0 a1 - x1
    let cp = Polynomial::new(f, vec![a0 * a1 - x1, -(a0 + a1), f.one()]);
    let (split, roots) = cp.split_roots();
    let leonard = closed_leonard && split;
    let closed_contraction_leonard = base;
    let contraction_leonard = base && x1.is_square();
    Classification1 {
        leonard,
        eigenvalues: split.then_some(roots),
        bipartite: leonard && a0.is_zero() && a1.is_zero(),
        contraction_leonard,
        near_bipartite: leonard.then_some(contraction_leonard),
        closed_leonard,
        closed_contraction_leonard,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification2 {
    pub leonard: bool,
    pub bipartite: bool,
    pub contraction_leonard: bool,
    /// Defined only for Leonard pairs.
    pub near_bipartite: Option<bool>,
    /// Whether A, A* is a near-bipartite expansion of B, A*; defined only
    /// when B, A* is Leonard.
    pub expansion: Option<bool>,
    pub closed_leonard: bool,
    pub closed_contraction_leonard: bool,
    pub closed_expansion: Option<bool>,
}

/// A = tridiag(subdiagonal 1, diagonal a, superdiagonal x), A* = diag(ths).
pub fn char_poly_d2(a: &[Scalar; 3], x: &[Scalar; 2]) -> Polynomial {
    let f = a[0].field();
    let c2 = -(&a[0] + &a[1] + &a[2]);
    let c1 = &a[0] * &a[1] + &a[0] * &a[2] + &a[1] * &a[2] - &x[0] - &x[1];
    let c0 = -(&a[0] * &a[1] * &a[2] - &a[0] * &x[1] - &a[2] * &x[0]);
    Polynomial::new(f, vec![c0, c1, c2, f.one()])
}

fn closed_leonard_d2(a: &[Scalar; 3], x: &[Scalar; 2], ths: &[Scalar; 3]) -> bool {
    let f = a[0].field();
    let distinct = ths[0] != ths[1] && ths[0] != ths[2] && ths[1] != ths[2] && !x[0].is_zero() && !x[1].is_zero();
    if !distinct {
        return false;
    }
    let d21 = &ths[2] - &ths[1];
    let d01 = &ths[0] - &ths[1];
    let d02 = &ths[0] - &ths[2];
    let d20 = -&d02;
    let a02 = &a[0] - &a[2];
    let mix = &a[0] * &d01 + &a[1] * &d20 + &a[2] * (&ths[1] - &ths[2]);
    let lhs = &x[0] / &d21 + &x[1] / &d01;
    let rhs = &a02 / &d02.square() * &mix;
    if lhs != rhs {
        return false;
    }
    let nz1 = &x[0] / &d21.square() + &x[1] / &d01.square() + a02.square() / d02.square();
    if nz1.is_zero() {
        return false;
    }
    let two = f.int(2);
    let nz2 = &x[0] / &d21 - &x[1] / &d01 + a02.square() / (&two * &d20) + mix.square() / (&two * d20.pow(3));
    !nz2.is_zero()
}

// The zero-diagonal pair condition: x1/(θ*1 - θ*2) = x2/(θ*0 - θ*1).
fn closed_contraction_d2(x: &[Scalar; 2], ths: &[Scalar; 3]) -> bool {
    let distinct = ths[0] != ths[1] && ths[0] != ths[2] && ths[1] != ths[2] && !x[0].is_zero() && !x[1].is_zero();
    distinct && &x[0] / &(&ths[1] - &ths[2]) == &x[1] / &(&ths[0] - &ths[1])
}

// Conditions for A to expand the zero-diagonal pair (which is assumed Leonard).
fn closed_expansion_d2(a: &[Scalar; 3], x: &[Scalar; 2], ths: &[Scalar; 3]) -> bool {
    let f = a[0].field();
    let four = f.int(4);
    let s = &x[0] + &x[1];
    if a[0] == a[2] {
        return !((&a[0] - &a[1]).square() + &four * &s).is_zero();
    }
    let aux = &a[0] * (&ths[0] - &ths[1]) + &a[2] * (&ths[1] - &ths[2]) + &a[1] * (&ths[2] - &ths[0]);
    let a02sq = (&a[0] - &a[2]).square();
    aux.is_zero()
        && !(&a02sq + &four * &s).is_zero()
        && !(&a02sq + s.pow(3) / (&x[0] * &x[1])).is_zero()
}

/// Diameter two classification.
pub fn leonard_d2(a: &[Scalar; 3], x: &[Scalar; 2], ths: &[Scalar; 3]) -> Classification2 {
    let closed_leonard = closed_leonard_d2(a, x, ths);
    let leonard = closed_leonard && char_poly_d2(a, x).split_roots().0;
    let closed_contraction_leonard = closed_contraction_d2(x, ths);
    // B has characteristic polynomial λ(λ² - x1 - x2)
    let contraction_leonard = closed_contraction_leonard && (&x[0] + &x[1]).is_square();
    let closed_expansion = closed_contraction_leonard.then(|| closed_expansion_d2(a, x, ths));
    let expansion = contraction_leonard.then(|| closed_expansion == Some(true) && char_poly_d2(a, x).split_roots().0);
    Classification2 {
        leonard,
        bipartite: leonard && a.iter().all(Scalar::is_zero),
        contraction_leonard,
        near_bipartite: leonard.then_some(contraction_leonard),
        expansion,
        closed_leonard,
        closed_contraction_leonard,
        closed_expansion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn v3(f: Field, x: [i64; 3]) -> [Scalar; 3] {
        x.map(|k| f.int(k))
    }

    #[test]
    fn d1_examples() {
        let q = Field::Rationals;
        let c = leonard_d1(&q.zero(), &q.zero(), &q.one(), &q.zero(), &q.one());
        assert!(c.leonard && c.bipartite && c.contraction_leonard);
        assert_eq!(c.near_bipartite, Some(true));
        let c = leonard_d1(&q.int(3), &q.one(), &q.one(), &q.zero(), &q.one());
        assert!(!c.leonard && c.closed_leonard && c.eigenvalues.is_none());
        let g = Field::prime(7).unwrap();
        let c = leonard_d1(&g.int(3), &g.one(), &g.one(), &g.zero(), &g.one());
        assert!(c.leonard);
        assert_eq!(c.eigenvalues, Some(vec![g.int(5), g.int(6)]));
        let c = leonard_d1(&q.one(), &q.int(-1), &q.int(-1), &q.zero(), &q.one());
        assert!(!c.leonard && !c.closed_leonard);
    }

    #[test]
    fn d2_bipartite_example() {
        let q = Field::Rationals;
        let ths = v3(q, [0, 1, 2]);
        let x = [q.one(), q.one()];
        let c = leonard_d2(&v3(q, [0, 0, 0]), &x, &ths);
        assert!(c.closed_leonard && c.closed_contraction_leonard);
        // eigenvalues 0, ±√2 are irrational
        assert!(!c.leonard && !c.contraction_leonard);
        let g = Field::prime(7).unwrap();
        let c = leonard_d2(&v3(g, [0, 0, 0]), &[g.one(), g.one()], &v3(g, [0, 1, 2]));
        assert!(c.leonard && c.bipartite && c.contraction_leonard);
    }

    #[test]
    fn d2_expansion_examples() {
        let q = Field::Rationals;
        let ths = v3(q, [0, 1, 2]);
        let x = [q.one(), q.one()];
        let c = leonard_d2(&v3(q, [1, 1, 1]), &x, &ths);
        assert_eq!(c.closed_expansion, Some(true));
        let c = leonard_d2(&v3(q, [1, 0, 2]), &x, &ths);
        assert_eq!(c.closed_expansion, Some(false));
        assert!(!c.closed_leonard);
    }

    #[test]
    fn d2_char_poly_matches_matrix() {
        let q = Field::Rationals;
        let a = v3(q, [2, -1, 5]);
        let x = [q.int(3), q.int(-7)];
        let m = Matrix::from_rows(vec![
            vec![a[0].clone(), x[0].clone(), q.zero()],
            vec![q.one(), a[1].clone(), x[1].clone()],
            vec![q.zero(), q.one(), a[2].clone()],
        ])
        .unwrap();
        assert_eq!(char_poly_d2(&a, &x), m.char_poly());
    }
}
