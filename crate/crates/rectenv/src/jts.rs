//! The Jordan triple system of p x q rational matrices with the product
//! {x,y,z} = x y^t z + z y^t x, its structure constants on the matrix-unit
//! basis, and the linear embedding of matrices into the free algebra.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::freealg::{GenId, NcPoly, Scalar, Shape, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JtsError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
}

/// Dense exact matrix with explicit dimensions, row-major storage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl RectMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RectMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    /// The matrix unit with a single 1 in (row, col), 1-based.
    pub fn unit(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut m = RectMatrix::zero(rows, cols);
        m.set(row, col, Scalar::from_integer(1.into()));
        m
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[(row - 1) * self.cols + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[(row - 1) * self.cols + (col - 1)] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RectMatrix {
        let mut out = RectMatrix::zero(self.cols, self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &RectMatrix) -> RectMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = RectMatrix::zero(self.rows, other.cols);
        for i in 1..=self.rows {
            for k in 1..=self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RectMatrix) -> RectMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> RectMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= c;
        }
        out
    }

    fn dims(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }
}

impl fmt::Display for RectMatrix {
    /// Row-major rational list, the form used in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

fn check_same(shape: (usize, usize), m: &RectMatrix) -> Result<(), JtsError> {
    if (m.rows, m.cols) != shape {
        return Err(JtsError::DimensionMismatch {
            expected: format!("{}x{}", shape.0, shape.1),
            got: m.dims(),
        });
    }
    Ok(())
}

/// {x,y,z} = x y^t z + z y^t x, all three p x q over the same shape.
pub fn triple_product(
    x: &RectMatrix,
    y: &RectMatrix,
    z: &RectMatrix,
) -> Result<RectMatrix, JtsError> {
    let shape = (x.rows, x.cols);
    check_same(shape, y)?;
    check_same(shape, z)?;
    let yt = y.transpose();
    Ok(x.matmul(&yt).matmul(z).add(&z.matmul(&yt).matmul(x)))
}

/// Checks outer symmetry and the 5-variable identity on one tuple. Both hold
/// for every tuple; this exists as a property-test oracle.
pub fn check_jts_axioms(
    u: &RectMatrix,
    v: &RectMatrix,
    x: &RectMatrix,
    y: &RectMatrix,
    z: &RectMatrix,
) -> Result<bool, JtsError> {
    let outer = triple_product(x, y, z)? == triple_product(z, y, x)?;
    let lhs = triple_product(u, v, &triple_product(x, y, z)?)?;
    let t1 = triple_product(&triple_product(u, v, x)?, y, z)?;
    let t2 = triple_product(x, &triple_product(v, u, y)?, z)?;
    let t3 = triple_product(x, y, &triple_product(u, v, z)?)?;
    let five = lhs == t1.add(&t2.scale(&-Scalar::from_integer(1.into()))).add(&t3);
    Ok(outer && five)
}

/// Expansion of {E_a, E_b, E_c} over the matrix-unit basis, for every basis
/// triple. Computed by dense matrix arithmetic.
#[derive(Clone, Debug)]
pub struct TripleStructureConstants {
    pub shape: Shape,
    table: HashMap<(GenId, GenId, GenId), Vec<(GenId, Scalar)>>,
}

impl TripleStructureConstants {
    pub fn get(&self, a: GenId, b: GenId, c: GenId) -> &[(GenId, Scalar)] {
        self.table.get(&(a, b, c)).map_or(&[], |v| v.as_slice())
    }
}

pub fn structure_constants(p: usize, q: usize) -> TripleStructureConstants {
    let shape = Shape::new(p, q);
    let basis: Vec<(GenId, RectMatrix)> = shape
        .gens()
        .map(|g| {
            (
                g,
                RectMatrix::unit(p, q, g.row as usize, g.col as usize),
            )
        })
        .collect();
    let mut table = HashMap::new();
    for (a, ma) in &basis {
        for (b, mb) in &basis {
            for (c, mc) in &basis {
                let prod = triple_product(ma, mb, mc).expect("same shape");
                let mut expansion = Vec::new();
                for (g, _) in &basis {
                    let coeff = prod.get(g.row as usize, g.col as usize);
                    if !coeff.is_zero() {
                        expansion.push((*g, coeff.clone()));
                    }
                }
                if !expansion.is_empty() {
                    table.insert((*a, *b, *c), expansion);
                }
            }
        }
    }
    TripleStructureConstants { shape, table }
}

/// Linear extension of `E[i,j] -> G[i,j]`: a degree-1 polynomial whose
/// coefficient on `G[i,j]` is the (i,j) entry.
pub fn phi(m: &RectMatrix) -> NcPoly {
    let mut out = NcPoly::zero();
    for i in 1..=m.rows {
        for j in 1..=m.cols {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.add_term(Word::single(GenId::new(i, j)), c.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, ratio};
    use proptest::prelude::*;

    fn e(p: usize, q: usize, i: usize, j: usize) -> RectMatrix {
        RectMatrix::unit(p, q, i, j)
    }

    /// Closed form for {E_a, E_b, E_c}: delta(a.col,b.col) delta(b.row,c.row)
    /// E[a.row, c.col] + delta(c.col,b.col) delta(b.row,a.row) E[c.row,a.col].
    fn delta_formula(p: usize, q: usize, a: GenId, b: GenId, c: GenId) -> RectMatrix {
        let mut out = RectMatrix::zero(p, q);
        if a.col == b.col && b.row == c.row {
            out = out.add(&e(p, q, a.row as usize, c.col as usize));
        }
        if c.col == b.col && b.row == a.row {
            out = out.add(&e(p, q, c.row as usize, a.col as usize));
        }
        out
    }

    #[test]
    fn triple_of_same_unit_doubles() {
        let x = e(2, 3, 1, 1);
        let got = triple_product(&x, &x, &x).unwrap();
        assert_eq!(got, x.scale(&int(2)));
    }

    #[test]
    fn triple_mixed_example() {
        let got = triple_product(&e(2, 3, 1, 1), &e(2, 3, 1, 1), &e(2, 3, 1, 2)).unwrap();
        assert_eq!(got, e(2, 3, 1, 2));
    }

    #[test]
    fn triple_disjoint_vanishes() {
        let got = triple_product(&e(2, 3, 1, 1), &e(2, 3, 2, 2), &e(2, 3, 1, 1)).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = e(2, 3, 1, 1);
        let b = e(3, 2, 1, 1);
        assert!(triple_product(&a, &b, &a).is_err());
    }

    #[test]
    fn axioms_hold_on_zero_and_basis() {
        let z = RectMatrix::zero(2, 3);
        assert!(check_jts_axioms(&z, &z, &z, &z, &z).unwrap());
        assert!(check_jts_axioms(
            &e(2, 3, 1, 1),
            &e(2, 3, 1, 2),
            &e(2, 3, 2, 1),
            &e(2, 3, 2, 2),
            &e(2, 3, 1, 3)
        )
        .unwrap());
    }

    #[test]
    fn structure_constants_examples() {
        let sc = structure_constants(2, 3);
        let g11 = GenId::new(1, 1);
        assert_eq!(sc.get(g11, g11, g11), &[(g11, int(2))]);
        // Zero by the delta pattern.
        assert!(sc
            .get(g11, GenId::new(2, 2), GenId::new(1, 3))
            .is_empty());
        assert_eq!(
            sc.get(GenId::new(1, 2), GenId::new(2, 2), GenId::new(2, 1)),
            &[(g11, int(1))]
        );
    }

    #[test]
    fn structure_constants_match_triple_product_exhaustively() {
        for (p, q) in [(2, 3), (3, 2), (2, 2)] {
            let shape = Shape::new(p, q);
            let sc = structure_constants(p, q);
            for a in shape.gens() {
                for b in shape.gens() {
                    for c in shape.gens() {
                        let dense = triple_product(
                            &e(p, q, a.row as usize, a.col as usize),
                            &e(p, q, b.row as usize, b.col as usize),
                            &e(p, q, c.row as usize, c.col as usize),
                        )
                        .unwrap();
                        let mut rebuilt = RectMatrix::zero(p, q);
                        for (g, coeff) in sc.get(a, b, c) {
                            rebuilt = rebuilt
                                .add(&e(p, q, g.row as usize, g.col as usize).scale(coeff));
                        }
                        assert_eq!(rebuilt, dense, "triple ({a}, {b}, {c})");
                        // The closed delta formula agrees with the dense
                        // computation.
                        assert_eq!(delta_formula(p, q, a, b, c), dense);
                        // Outer symmetry of the stored expansion.
                        assert_eq!(sc.get(a, b, c), sc.get(c, b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&e(2, 3, 2, 3)),
            NcPoly::gen(GenId::new(2, 3))
        );
        assert!(phi(&RectMatrix::zero(2, 3)).is_zero());
        let m = e(2, 3, 1, 1)
            .scale(&ratio(1, 2))
            .add(&e(2, 3, 2, 1).scale(&int(-3)));
        let mut expect = NcPoly::from_term(Word::single(GenId::new(1, 1)), ratio(1, 2));
        expect.add_term(Word::single(GenId::new(2, 1)), int(-3));
        assert_eq!(phi(&m), expect);
    }

    prop_compose! {
        fn arb_matrix()(vals in prop::collection::vec((-6i64..=6, 1i64..=4), 6)) -> RectMatrix {
            let mut m = RectMatrix::zero(2, 3);
            let mut it = vals.into_iter();
            for i in 1..=2 {
                for j in 1..=3 {
                    let (n, d) = it.next().unwrap();
                    m.set(i, j, ratio(n, d));
                }
            }
            m
        }
    }

    proptest! {
        #[test]
        fn outer_symmetry(x in arb_matrix(), y in arb_matrix(), z in arb_matrix()) {
            prop_assert_eq!(
                triple_product(&x, &y, &z).unwrap(),
                triple_product(&z, &y, &x).unwrap()
            );
        }

        #[test]
        fn five_variable_identity(
            u in arb_matrix(), v in arb_matrix(),
            x in arb_matrix(), y in arb_matrix(), z in arb_matrix()
        ) {
            prop_assert!(check_jts_axioms(&u, &v, &x, &y, &z).unwrap());
        }

        #[test]
        fn trilinearity(x in arb_matrix(), y in arb_matrix(), z in arb_matrix(), a in -4i64..=4) {
            let c = int(a);
            prop_assert_eq!(
                triple_product(&x.scale(&c), &y, &z).unwrap(),
                triple_product(&x, &y, &z).unwrap().scale(&c)
            );
            prop_assert_eq!(
                triple_product(&x, &y.scale(&c), &z).unwrap(),
                triple_product(&x, &y, &z).unwrap().scale(&c)
            );
            prop_assert_eq!(
                triple_product(&x, &y, &z.scale(&c)).unwrap(),
                triple_product(&x, &y, &z).unwrap().scale(&c)
            );
        }
    }
}
