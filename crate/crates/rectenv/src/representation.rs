//! The explicit (p+q)-dimensional representation of the triple system, the
//! induced algebra map on the envelope, and the isomorphism certificate
//! identifying the envelope with the full (p+q) x (p+q) matrix algebra.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::envelope::{EnvelopeContext, MatrixUnitTable};
use crate::freealg::{GenId, NcPoly, Scalar, Shape};
use crate::jts::{triple_product, RectMatrix};
use crate::report::{CertCheck, Certificate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("generator index ({row},{col}) out of range for shape {p}x{q}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        p: usize,
        q: usize,
    },
}

/// Exact square matrix of size p+q. Images of the representation are
/// supported on the two off-diagonal blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMatrix {
    pub n: usize,
    entries: Vec<Scalar>,
}

impl BlockMatrix {
    pub fn zero(n: usize) -> Self {
        BlockMatrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BlockMatrix::zero(n);
        for i in 1..=n {
            m.set(i, i, Scalar::from_integer(1.into()));
        }
        m
    }

    /// The unit with a single 1 at (row, col), 1-based.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = BlockMatrix::zero(n);
        m.set(row, col, Scalar::from_integer(1.into()));
        m
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[(row - 1) * self.n + (col - 1)] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> BlockMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn matmul(&self, other: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BlockMatrix::zero(self.n);
        for i in 1..=self.n {
            for k in 1..=self.n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=self.n {
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

    pub fn transpose(&self) -> BlockMatrix {
        let mut out = BlockMatrix::zero(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Display for BlockMatrix {
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

/// The basis image: `E[i,j]` maps to the symmetric sum of units at
/// (i, p+j) and (p+j, i).
pub fn theta(shape: Shape, row: usize, col: usize) -> Result<BlockMatrix, ThetaError> {
    if row < 1 || row > shape.p || col < 1 || col > shape.q {
        return Err(ThetaError::IndexOutOfRange {
            row,
            col,
            p: shape.p,
            q: shape.q,
        });
    }
    let n = shape.p + shape.q;
    Ok(BlockMatrix::unit(n, row, shape.p + col).add(&BlockMatrix::unit(n, shape.p + col, row)))
}

fn theta_gen(shape: Shape, g: GenId) -> BlockMatrix {
    theta(shape, g.row as usize, g.col as usize).expect("generator in shape")
}

/// The induced algebra map: substitute each generator by its image and
/// extend multiplicatively and linearly; the empty word maps to the
/// identity.
pub fn evaluate(shape: Shape, poly: &NcPoly) -> BlockMatrix {
    let n = shape.p + shape.q;
    let mut out = BlockMatrix::zero(n);
    for (w, c) in poly.iter() {
        let mut m = BlockMatrix::identity(n);
        for &g in w.letters() {
            m = m.matmul(&theta_gen(shape, g));
        }
        out = out.add(&m.scale(c));
    }
    out
}

/// Linear extension of theta to an arbitrary p x q matrix.
fn theta_linear(shape: Shape, m: &RectMatrix) -> BlockMatrix {
    let n = shape.p + shape.q;
    let mut out = BlockMatrix::zero(n);
    for i in 1..=shape.p {
        for j in 1..=shape.q {
            let c = m.get(i, j);
            if !c.is_zero() {
                out = out.add(&theta_gen(shape, GenId::new(i, j)).scale(c));
            }
        }
    }
    out
}

/// Certifies that the basis images respect the triple product:
/// theta({x,y,z}) = theta(x) theta(y)^t theta(z) + theta(z) theta(y)^t
/// theta(x) on all basis triples, computed both by dense matrix arithmetic
/// and by the closed delta expressions, all four of which must agree.
pub fn certify_theta_homomorphism(p: usize, q: usize) -> Certificate {
    let shape = Shape::new(p, q);
    let n = p + q;
    let mut cert = CertCheck::new(
        "theta:homomorphism",
        "(i,j),(k,l),(s,t) over all basis triples",
    );
    let units: Vec<(GenId, RectMatrix)> = shape
        .gens()
        .map(|g| {
            (
                g,
                RectMatrix::unit(p, q, g.row as usize, g.col as usize),
            )
        })
        .collect();
    for (a, ma) in &units {
        for (b, mb) in &units {
            for (c, mc) in &units {
                // Dense route.
                let lhs_dense = theta_linear(shape, &triple_product(ma, mb, mc).expect("shape"));
                let (ta, tb, tc) = (
                    theta_gen(shape, *a),
                    theta_gen(shape, *b),
                    theta_gen(shape, *c),
                );
                let tbt = tb.transpose();
                let rhs_dense = ta
                    .matmul(&tbt)
                    .matmul(&tc)
                    .add(&tc.matmul(&tbt).matmul(&ta));
                // Delta route for both sides.
                let (i, j) = (a.row as usize, a.col as usize);
                let (k, l) = (b.row as usize, b.col as usize);
                let (s, t) = (c.row as usize, c.col as usize);
                let mut lhs_delta = BlockMatrix::zero(n);
                if j == l && k == s {
                    lhs_delta = lhs_delta
                        .add(&BlockMatrix::unit(n, i, p + t))
                        .add(&BlockMatrix::unit(n, p + t, i));
                }
                if t == l && k == i {
                    lhs_delta = lhs_delta
                        .add(&BlockMatrix::unit(n, s, p + j))
                        .add(&BlockMatrix::unit(n, p + j, s));
                }
                let mut rhs_delta = BlockMatrix::zero(n);
                if j == l && k == s {
                    rhs_delta = rhs_delta.add(&BlockMatrix::unit(n, i, p + t));
                }
                if i == k && l == t {
                    rhs_delta = rhs_delta.add(&BlockMatrix::unit(n, p + j, s));
                }
                if t == l && i == k {
                    rhs_delta = rhs_delta.add(&BlockMatrix::unit(n, s, p + j));
                }
                if s == k && l == j {
                    rhs_delta = rhs_delta.add(&BlockMatrix::unit(n, p + t, i));
                }
                let ok = lhs_dense == rhs_dense && lhs_dense == lhs_delta && rhs_dense == rhs_delta;
                cert.instance(ok, || format!("triple ({a}, {b}, {c}) disagrees"));
            }
        }
    }
    cert.finish()
}

/// The three-part isomorphism certificate.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub certificates: Vec<Certificate>,
    pub well_defined: bool,
    pub surjective: bool,
    pub dim_match: bool,
    pub overall: bool,
}

impl IsoCertificate {
    /// A certificate that records a build failure instead of crashing.
    pub fn from_build_failure(reason: &str) -> IsoCertificate {
        let certs = vec![
            Certificate::aborted("iso:well-defined", reason.to_string()),
            Certificate::aborted("iso:surjective", reason.to_string()),
            Certificate::aborted("iso:dimension", reason.to_string()),
            Certificate::aborted("iso:overall", reason.to_string()),
        ];
        IsoCertificate {
            certificates: certs,
            well_defined: false,
            surjective: false,
            dim_match: false,
            overall: false,
        }
    }
}

/// Certifies the isomorphism with the full matrix algebra: every ideal
/// generator evaluates to zero (the map factors through the quotient), the
/// unit expressions map exactly onto the matrix units (surjectivity), and
/// the envelope dimension matches (injectivity by dimension count).
pub fn isomorphism_certificate(ctx: &EnvelopeContext, units: &MatrixUnitTable) -> IsoCertificate {
    let shape = ctx.shape;
    let n = shape.p + shape.q;

    let mut c = CertCheck::new("iso:well-defined", "all ideal generators after pruning");
    for (idx, g) in ctx.generators.polys.iter().enumerate() {
        let image = evaluate(shape, g);
        c.instance(image.is_zero(), || {
            format!("generator {idx} maps to {image}")
        });
    }
    let well = c.finish();

    let mut c = CertCheck::new("iso:surjective", "(i,k) in (1..=p+q)^2");
    for i in 1..=n {
        for k in 1..=n {
            let image = evaluate(shape, &units.get(i, k).raw);
            c.instance(image == BlockMatrix::unit(n, i, k), || {
                format!("A[{i},{k}] maps to {image}")
            });
        }
    }
    let surj = c.finish();

    let mut c = CertCheck::new("iso:dimension", "single instance");
    let dim = ctx.dimension();
    c.instance(dim == n * n, || {
        format!("dimension = {dim}, expected {}", n * n)
    });
    let dims = c.finish();

    let mut c = CertCheck::new("iso:overall", "conjunction of the three components");
    let overall = well.pass && surj.pass && dims.pass;
    c.instance(overall, || "component certificate failed".to_string());
    let overall_cert = c.finish();

    IsoCertificate {
        well_defined: well.pass,
        surjective: surj.pass,
        dim_match: dims.pass,
        overall,
        certificates: vec![well, surj, dims, overall_cert],
    }
}

/// Certifies the image of the central idempotent: it evaluates to the
/// identity matrix, its square does too, and it commutes with every
/// generator image.
pub fn center_image(ctx: &EnvelopeContext, e: &NcPoly) -> Certificate {
    let shape = ctx.shape;
    let n = shape.p + shape.q;
    let mut cert = CertCheck::new("center:image", "identity image plus generator commutators");
    let image = evaluate(shape, e);
    cert.instance(image == BlockMatrix::identity(n), || {
        format!("image of e = {image}")
    });
    let square = evaluate(shape, &(e * e));
    cert.instance(square == BlockMatrix::identity(n), || {
        format!("image of e*e = {square}")
    });
    for g in shape.gens() {
        let gpoly = NcPoly::gen(g);
        let comm = evaluate(shape, &(&(e * &gpoly) - &(&gpoly * e)));
        cert.instance(comm.is_zero(), || format!("[e, {g}] maps to {comm}"));
    }
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{build, center_element, matrix_units};
    use crate::freealg::int;
    use std::sync::OnceLock;

    fn ctx23() -> &'static EnvelopeContext {
        static CTX: OnceLock<EnvelopeContext> = OnceLock::new();
        CTX.get_or_init(|| build(2, 3).unwrap())
    }

    #[test]
    fn theta_examples() {
        let shape = Shape::new(2, 3);
        let t11 = theta(shape, 1, 1).unwrap();
        assert_eq!(t11, BlockMatrix::unit(5, 1, 3).add(&BlockMatrix::unit(5, 3, 1)));
        let t23 = theta(shape, 2, 3).unwrap();
        assert_eq!(t23, BlockMatrix::unit(5, 2, 5).add(&BlockMatrix::unit(5, 5, 2)));
        assert!(theta(shape, 3, 1).is_err());
        // Symmetric images with pairwise disjoint supports.
        assert_eq!(t11.transpose(), t11);
        for g in shape.gens() {
            for h in shape.gens() {
                if g != h {
                    let a = theta_gen(shape, g);
                    let b = theta_gen(shape, h);
                    for i in 1..=5 {
                        for j in 1..=5 {
                            assert!(a.get(i, j).is_zero() || b.get(i, j).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let shape = Shape::new(2, 3);
        assert_eq!(
            evaluate(shape, &NcPoly::gen(GenId::new(1, 1))),
            theta(shape, 1, 1).unwrap()
        );
        assert_eq!(evaluate(shape, &NcPoly::one()), BlockMatrix::identity(5));
        assert!(evaluate(shape, &NcPoly::zero()).is_zero());
    }

    #[test]
    fn evaluate_is_an_algebra_map() {
        use rand::{Rng, SeedableRng};
        let shape = Shape::new(2, 3);
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut random_poly = || {
            let mut p = NcPoly::zero();
            for _ in 0..rng.gen_range(0..4) {
                let len = rng.gen_range(0..4);
                let letters: Vec<GenId> = (0..len)
                    .map(|_| GenId::new(rng.gen_range(1..=2), rng.gen_range(1..=3)))
                    .collect();
                p.add_term(
                    crate::freealg::Word::from_letters(letters),
                    int(rng.gen_range(-4..=4)),
                );
            }
            p
        };
        for _ in 0..40 {
            let a = random_poly();
            let b = random_poly();
            assert_eq!(
                evaluate(shape, &(&a * &b)),
                evaluate(shape, &a).matmul(&evaluate(shape, &b))
            );
            assert_eq!(
                evaluate(shape, &(&a + &b)),
                evaluate(shape, &a).add(&evaluate(shape, &b))
            );
        }
    }

    #[test]
    fn evaluate_factors_through_normal_form() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx23();
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let mut p = NcPoly::zero();
            for _ in 0..rng.gen_range(1..4) {
                let len = rng.gen_range(0..5);
                let letters: Vec<GenId> = (0..len)
                    .map(|_| GenId::new(rng.gen_range(1..=2), rng.gen_range(1..=3)))
                    .collect();
                p.add_term(
                    crate::freealg::Word::from_letters(letters),
                    int(rng.gen_range(-4..=4)),
                );
            }
            assert_eq!(
                evaluate(ctx.shape, &p),
                evaluate(ctx.shape, &ctx.nf(&p))
            );
        }
    }

    #[test]
    fn theta_homomorphism_certifies() {
        let cert = certify_theta_homomorphism(2, 3);
        assert!(cert.pass, "{:?}", cert.failures);
        assert_eq!(cert.instances_checked, 216);
    }

    #[test]
    fn isomorphism_certifies_at_2_3() {
        let ctx = ctx23();
        let units = matrix_units(ctx).unwrap();
        let iso = isomorphism_certificate(ctx, &units);
        assert!(iso.well_defined && iso.surjective && iso.dim_match && iso.overall);
    }

    #[test]
    fn center_image_is_identity() {
        let ctx = ctx23();
        let units = matrix_units(ctx).unwrap();
        let center = center_element(ctx, &units).unwrap();
        let cert = center_image(ctx, &center.poly);
        assert!(cert.pass, "{:?}", cert.failures);
    }
}
