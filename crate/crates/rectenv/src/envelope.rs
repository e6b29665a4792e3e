//! The universal associative envelope of the rectangular Jordan triple
//! system: generates the defining ideal, completes it to a confluent
//! rewriting system, certifies the envelope identities, constructs the
//! matrix-unit table, and builds the central idempotent.
//!
//! Indices: rows live in 1..=p, columns in 1..=q, and matrix-unit indices
//! run over 1..=p+q where the first p positions are "row" slots and the
//! remaining q positions are shifted "column" slots.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::{int, GenId, NcPoly, Scalar, Shape, Word};
use crate::jts::structure_constants;
use crate::linalg;
use crate::report::{CertCheck, Certificate};
use crate::rewrite::{self, BasisError, CompleteError, CompletionStatus, NormalWordBasis, RewriteSystem};

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const DEFAULT_BASIS_CAP: usize = 1024;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_degree: usize,
    pub basis_cap: usize,
    /// Permits p = q or one-row/one-column shapes for exploration; the
    /// certified statements assume a proper rectangular shape.
    pub allow_unproven: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            basis_cap: DEFAULT_BASIS_CAP,
            allow_unproven: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid shape p={p} q={q}: {reason}")]
    InvalidShape {
        p: usize,
        q: usize,
        reason: &'static str,
    },
    #[error(transparent)]
    Completion(#[from] CompleteError),
    #[error("completion not certified at degree bound {max_degree}: ambiguity of degree {exceeded} unresolved")]
    Incomplete { max_degree: usize, exceeded: usize },
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// The defining ideal generators, with the (x,z)-swap duplicates pruned.
#[derive(Clone, Debug)]
pub struct IdealGenerators {
    pub polys: Vec<NcPoly>,
    /// Number of basis triples before pruning: (pq)^3.
    pub total_triples: usize,
    /// Triples dropped because the swapped triple produces the identical
    /// polynomial.
    pub pruned: usize,
}

/// One generator per triple (a, b, c) with a <= c:
/// `word(a b c) + word(c b a) - phi({E_a, E_b, E_c})`.
pub fn ideal_generators(p: usize, q: usize) -> IdealGenerators {
    let shape = Shape::new(p, q);
    let sc = structure_constants(p, q);
    let gens: Vec<GenId> = shape.gens().collect();
    let mut polys = Vec::new();
    for (ai, &a) in gens.iter().enumerate() {
        for &c in &gens[ai..] {
            for &b in &gens {
                let mut poly = NcPoly::zero();
                poly.add_term(Word::from_letters(vec![a, b, c]), Scalar::one());
                poly.add_term(Word::from_letters(vec![c, b, a]), Scalar::one());
                for (g, coeff) in sc.get(a, b, c) {
                    poly.add_term(Word::single(*g), -coeff.clone());
                }
                polys.push(poly);
            }
        }
    }
    let total = gens.len().pow(3);
    let pruned = total - polys.len();
    IdealGenerators {
        polys,
        total_triples: total,
        pruned,
    }
}

/// A built envelope: the completed system and its certified normal-word
/// basis.
#[derive(Clone, Debug)]
pub struct EnvelopeContext {
    pub shape: Shape,
    pub generators: IdealGenerators,
    pub system: RewriteSystem,
    pub basis: NormalWordBasis,
    /// False when the shape was admitted via `allow_unproven`; the certified
    /// statements do not claim anything for such shapes.
    pub theorem_mode: bool,
    pub options: BuildOptions,
}

impl EnvelopeContext {
    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn nf(&self, p: &NcPoly) -> NcPoly {
        self.system.normal_form(p)
    }
}

/// Checks the rectangular-shape precondition. Returns whether the shape is
/// in theorem scope (p != q, both > 1); non-theorem shapes are only admitted
/// with `allow_unproven`.
pub fn validate_shape(p: usize, q: usize, allow_unproven: bool) -> Result<bool, BuildError> {
    if p == 0 || q == 0 {
        return Err(BuildError::InvalidShape {
            p,
            q,
            reason: "dimensions must be positive",
        });
    }
    if p > 255 || q > 255 {
        return Err(BuildError::InvalidShape {
            p,
            q,
            reason: "dimensions above 255 are not supported",
        });
    }
    let rectangular = p != q && p > 1 && q > 1;
    if !rectangular && !allow_unproven {
        let reason = if p == q {
            "requires p != q (pass --allow-unproven to explore anyway)"
        } else {
            "requires p, q > 1 (pass --allow-unproven to explore anyway)"
        };
        return Err(BuildError::InvalidShape { p, q, reason });
    }
    Ok(rectangular)
}

pub fn build(p: usize, q: usize) -> Result<EnvelopeContext, BuildError> {
    build_with(p, q, BuildOptions::default())
}

pub fn build_with(p: usize, q: usize, options: BuildOptions) -> Result<EnvelopeContext, BuildError> {
    let theorem_mode = validate_shape(p, q, options.allow_unproven)?;
    let generators = ideal_generators(p, q);
    build_from_generators(p, q, generators, options, theorem_mode)
}

/// Builds from an explicit generator list without shape validation; used by
/// `build_with` and by negative-control runs that tamper with the ideal.
pub fn build_from_generators(
    p: usize,
    q: usize,
    generators: IdealGenerators,
    options: BuildOptions,
    theorem_mode: bool,
) -> Result<EnvelopeContext, BuildError> {
    let system = rewrite::complete(&generators.polys, options.max_degree)?;
    if let CompletionStatus::Incomplete { exceeded_degree } = system.status() {
        return Err(BuildError::Incomplete {
            max_degree: options.max_degree,
            exceeded: exceeded_degree,
        });
    }
    // The envelope is generated by the degree-1 images, so it is the
    // non-unital quotient: its linear basis is the nonempty irreducible
    // words. (Its own unit is the central idempotent, not the empty word.)
    let basis = system.normal_words(options.basis_cap)?.without_empty_word();
    Ok(EnvelopeContext {
        shape: Shape::new(p, q),
        generators,
        system,
        basis,
        theorem_mode,
        options,
    })
}

fn gw(letters: &[(usize, usize)]) -> Word {
    Word::from_letters(letters.iter().map(|&(r, c)| GenId::new(r, c)).collect())
}

fn gp(letters: &[(usize, usize)]) -> NcPoly {
    NcPoly::from_word(gw(letters))
}

/// Quotient-consistency certificate: every defining generator reduces to 0.
pub fn certify_generators(ctx: &EnvelopeContext) -> Certificate {
    let mut cert = CertCheck::new(
        "build:consistency",
        "all ideal generators after symmetry pruning",
    );
    for (idx, g) in ctx.generators.polys.iter().enumerate() {
        let nf = ctx.nf(g);
        cert.instance(nf.is_zero(), || format!("generator {idx}: nf = {nf}"));
    }
    cert.finish()
}

/// The eight degree-lowering identity families, plus the two
/// choice-independence families they imply, certified by reduction to zero.
pub fn certify_lemma_identities(ctx: &EnvelopeContext) -> Vec<Certificate> {
    let (p, q) = (ctx.shape.p, ctx.shape.q);
    let mut out = Vec::new();

    // G[i,j]^3 = G[i,j].
    let mut c = CertCheck::new("lemma:I", "i in 1..=p; j in 1..=q");
    for i in 1..=p {
        for j in 1..=q {
            let d = &gp(&[(i, j), (i, j), (i, j)]) - &gp(&[(i, j)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    // G[i,j] G[k,l] = 0 when both indices differ.
    let mut c = CertCheck::new("lemma:II", "i,k in 1..=p, i != k; j,l in 1..=q, j != l");
    for i in 1..=p {
        for k in (1..=p).filter(|&k| k != i) {
            for j in 1..=q {
                for l in (1..=q).filter(|&l| l != j) {
                    let nf = ctx.nf(&gp(&[(i, j), (k, l)]));
                    c.instance(nf.is_zero(), || format!("i={i} k={k} j={j} l={l}: nf = {nf}"));
                }
            }
        }
    }
    out.push(c.finish());

    // Same-row pairs reduce to row 1.
    let mut c = CertCheck::new("lemma:III", "i in 2..=p; j,l in 1..=q, j != l");
    for i in 2..=p {
        for j in 1..=q {
            for l in (1..=q).filter(|&l| l != j) {
                let d = &gp(&[(i, j), (i, l)]) - &gp(&[(1, j), (1, l)]);
                let nf = ctx.nf(&d);
                c.instance(nf.is_zero(), || format!("i={i} j={j} l={l}: nf = {nf}"));
            }
        }
    }
    out.push(c.finish());

    // Same-column pairs reduce to column 1.
    let mut c = CertCheck::new("lemma:IV", "i,k in 1..=p, i != k; j in 2..=q");
    for i in 1..=p {
        for k in (1..=p).filter(|&k| k != i) {
            for j in 2..=q {
                let d = &gp(&[(i, j), (k, j)]) - &gp(&[(i, 1), (k, 1)]);
                let nf = ctx.nf(&d);
                c.instance(nf.is_zero(), || format!("i={i} k={k} j={j}: nf = {nf}"));
            }
        }
    }
    out.push(c.finish());

    // Row-1 triples with adjacent-distinct columns vanish.
    let mut c = CertCheck::new("lemma:V", "j,l,s in 1..=q, j != l, l != s");
    for j in 1..=q {
        for l in (1..=q).filter(|&l| l != j) {
            for s in (1..=q).filter(|&s| s != l) {
                let nf = ctx.nf(&gp(&[(1, j), (1, l), (1, s)]));
                c.instance(nf.is_zero(), || format!("j={j} l={l} s={s}: nf = {nf}"));
            }
        }
    }
    out.push(c.finish());

    // Column-1 triples with adjacent-distinct rows vanish.
    let mut c = CertCheck::new("lemma:VI", "i,k,t in 1..=p, i != k, k != t");
    for i in 1..=p {
        for k in (1..=p).filter(|&k| k != i) {
            for t in (1..=p).filter(|&t| t != k) {
                let nf = ctx.nf(&gp(&[(i, 1), (k, 1), (t, 1)]));
                c.instance(nf.is_zero(), || format!("i={i} k={k} t={t}: nf = {nf}"));
            }
        }
    }
    out.push(c.finish());

    // G[1,1] G[i,1] G[i,1] = G[1,j] G[1,j] G[1,1].
    let mut c = CertCheck::new("lemma:VII", "i in 2..=p; j in 2..=q");
    for i in 2..=p {
        for j in 2..=q {
            let d = &gp(&[(1, 1), (i, 1), (i, 1)]) - &gp(&[(1, j), (1, j), (1, 1)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    // G[i,1] G[i,1] G[1,1] = G[1,1] G[1,j] G[1,j].
    let mut c = CertCheck::new("lemma:VIII", "i in 2..=p; j in 2..=q");
    for i in 2..=p {
        for j in 2..=q {
            let d = &gp(&[(i, 1), (i, 1), (1, 1)]) - &gp(&[(1, 1), (1, j), (1, j)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    // The two products above do not depend on the choice of row index.
    let mut c = CertCheck::new("remark:row-choice", "i < i' in 2..=p");
    for i in 2..=p {
        for i2 in i + 1..=p {
            let d1 = &gp(&[(1, 1), (i, 1), (i, 1)]) - &gp(&[(1, 1), (i2, 1), (i2, 1)]);
            let nf1 = ctx.nf(&d1);
            c.instance(nf1.is_zero(), || format!("i={i} i'={i2} (left): nf = {nf1}"));
            let d2 = &gp(&[(i, 1), (i, 1), (1, 1)]) - &gp(&[(i2, 1), (i2, 1), (1, 1)]);
            let nf2 = ctx.nf(&d2);
            c.instance(nf2.is_zero(), || format!("i={i} i'={i2} (right): nf = {nf2}"));
        }
    }
    out.push(c.finish());

    // ... nor on the choice of column index.
    let mut c = CertCheck::new("remark:col-choice", "j < j' in 2..=q");
    for j in 2..=q {
        for j2 in j + 1..=q {
            let d1 = &gp(&[(1, j), (1, j), (1, 1)]) - &gp(&[(1, j2), (1, j2), (1, 1)]);
            let nf1 = ctx.nf(&d1);
            c.instance(nf1.is_zero(), || format!("j={j} j'={j2} (left): nf = {nf1}"));
            let d2 = &gp(&[(1, 1), (1, j), (1, j)]) - &gp(&[(1, 1), (1, j2), (1, j2)]);
            let nf2 = ctx.nf(&d2);
            c.instance(nf2.is_zero(), || format!("j={j} j'={j2} (right): nf = {nf2}"));
        }
    }
    out.push(c.finish());

    out
}

/// The eight derived degree-4/5 identity families.
pub fn certify_corollary_identities(ctx: &EnvelopeContext) -> Vec<Certificate> {
    let (p, q) = (ctx.shape.p, ctx.shape.q);
    let mut out = Vec::new();

    let mut c = CertCheck::new("corollary:I", "l,j in 2..=q");
    for l in 2..=q {
        for j in 2..=q {
            let mut rhs = gp(&[(1, l), (1, j)]);
            if l == j {
                rhs = &rhs - &gp(&[(1, 1), (1, 1), (1, j), (1, j)]);
            }
            let d = &gp(&[(1, l), (1, 1), (1, 1), (1, j)]) - &rhs;
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("l={l} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:II", "i,k in 2..=p");
    for i in 2..=p {
        for k in 2..=p {
            let mut rhs = gp(&[(i, 1), (k, 1)]);
            if i == k {
                rhs = &rhs - &gp(&[(1, 1), (1, 1), (i, 1), (i, 1)]);
            }
            let d = &gp(&[(i, 1), (1, 1), (1, 1), (k, 1)]) - &rhs;
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} k={k}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    // Quantified over all j including j = 1, where the delta term is live.
    let mut c = CertCheck::new("corollary:III", "j in 1..=q; l in 2..=q");
    for j in 1..=q {
        for l in 2..=q {
            let mut rhs = gp(&[(1, j), (1, 1)]);
            if j == 1 {
                rhs = &rhs - &gp(&[(1, 1), (1, 1), (1, l), (1, l)]);
            }
            let d = &gp(&[(1, j), (1, l), (1, l), (1, 1)]) - &rhs;
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("j={j} l={l}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:IV", "j in 2..=q");
    for j in 2..=q {
        let d = &gp(&[(1, 1), (1, 1), (1, j), (1, j), (1, 1)]) - &gp(&[(1, j), (1, j), (1, 1)]);
        let nf = ctx.nf(&d);
        c.instance(nf.is_zero(), || format!("j={j}: nf = {nf}"));
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:V", "j,l in 2..=q");
    for j in 2..=q {
        for l in 2..=q {
            let d =
                &gp(&[(1, j), (1, j), (1, 1), (1, 1), (1, l)]) - &gp(&[(1, 1), (1, 1), (1, l)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("j={j} l={l}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:VI", "i in 2..=p; j in 2..=q");
    for i in 2..=p {
        for j in 2..=q {
            let d = &gp(&[(1, 1), (1, 1), (1, j), (1, j), (1, 1), (i, 1)]) - &gp(&[(1, 1), (i, 1)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:VII", "j,l in 2..=q");
    for j in 2..=q {
        for l in 2..=q {
            let d = &gp(&[(1, 1), (1, j), (1, j), (1, l)]) - &gp(&[(1, 1), (1, l)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("j={j} l={l}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    let mut c = CertCheck::new("corollary:VIII", "i in 2..=p; j in 2..=q");
    for i in 2..=p {
        for j in 2..=q {
            let d = &gp(&[(i, 1), (1, 1), (1, j), (1, j)]) - &gp(&[(i, 1), (1, 1)]);
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    out
}

#[derive(Debug, Error)]
pub enum UnitsError {
    #[error("matrix-unit construction requires p >= 2 and q >= 2 (got p={p}, q={q})")]
    ShapeTooSmall { p: usize, q: usize },
}

/// One matrix-unit entry: the generator expression as written and its
/// normal form.
#[derive(Clone, Debug)]
pub struct MatrixUnit {
    pub row: usize,
    pub col: usize,
    pub raw: NcPoly,
    pub nf: NcPoly,
}

/// The full (p+q) x (p+q) table of unit expressions.
#[derive(Clone, Debug)]
pub struct MatrixUnitTable {
    pub n: usize,
    units: Vec<MatrixUnit>,
}

impl MatrixUnitTable {
    pub fn get(&self, i: usize, k: usize) -> &MatrixUnit {
        &self.units[(i - 1) * self.n + (k - 1)]
    }

    pub fn iter(&self) -> impl Iterator<Item = &MatrixUnit> {
        self.units.iter()
    }
}

/// The unit expression `A[i,k]` in the generators, with the free "any j / any
/// t" choices made explicit. `j_choice` ranges over 2..=q and `t_choice`
/// over 2..=p; the table fixes both to 2 and certifies independence
/// separately.
pub fn matrix_unit_expr(
    shape: Shape,
    i: usize,
    k: usize,
    j_choice: usize,
    t_choice: usize,
) -> NcPoly {
    let p = shape.p;
    let (j, t) = (j_choice, t_choice);
    let row_slot = |x: usize| x <= p;
    match (row_slot(i), row_slot(k)) {
        (true, true) if i == k => {
            if i == 1 {
                gp(&[(1, 1), (1, 1), (1, j), (1, j)])
            } else {
                &gp(&[(i, 1), (i, 1)]) - &gp(&[(1, 1), (1, 1), (t, 1), (t, 1)])
            }
        }
        (true, true) => gp(&[(i, 1), (k, 1)]),
        (true, false) => {
            if i == 1 && k == p + 1 {
                gp(&[(1, j), (1, j), (1, 1)])
            } else {
                gp(&[(i, 1), (1, 1), (1, k - p)])
            }
        }
        (false, true) => {
            &NcPoly::gen(GenId::new(k, i - p)) - &matrix_unit_expr(shape, k, i, j, t)
        }
        (false, false) if i == k => {
            &gp(&[(1, i - p), (1, i - p)]) - &gp(&[(1, 1), (1, 1), (1, j), (1, j)])
        }
        (false, false) => gp(&[(1, i - p), (1, k - p)]),
    }
}

/// Builds the full table with the minimal admissible choices (j = 2, t = 2).
pub fn matrix_units(ctx: &EnvelopeContext) -> Result<MatrixUnitTable, UnitsError> {
    let (p, q) = (ctx.shape.p, ctx.shape.q);
    if p < 2 || q < 2 {
        return Err(UnitsError::ShapeTooSmall { p, q });
    }
    let n = p + q;
    let mut units = Vec::with_capacity(n * n);
    for i in 1..=n {
        for k in 1..=n {
            let raw = matrix_unit_expr(ctx.shape, i, k, 2, 2);
            let nf = ctx.nf(&raw);
            units.push(MatrixUnit {
                row: i,
                col: k,
                raw,
                nf,
            });
        }
    }
    Ok(MatrixUnitTable { n, units })
}

/// Certifies the unit table: the multiplication table `A[i,k] A[l,t] =
/// delta(k,l) A[i,t]`, linear independence of the normal forms, the spanning
/// decomposition `G[i,j] = A[i,j+p] + A[j+p,i]`, and independence of the
/// construction choices.
pub fn certify_unit_table(ctx: &EnvelopeContext, units: &MatrixUnitTable) -> Vec<Certificate> {
    let (p, q) = (ctx.shape.p, ctx.shape.q);
    let n = units.n;
    let mut out = Vec::new();

    let mut c = CertCheck::new("units:product-table", "(i,k,l,t) in (1..=p+q)^4");
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                for t in 1..=n {
                    let mut d = &units.get(i, k).raw * &units.get(l, t).raw;
                    if k == l {
                        d = &d - &units.get(i, t).raw;
                    }
                    let nf = ctx.nf(&d);
                    c.instance(nf.is_zero(), || {
                        format!("i={i} k={k} l={l} t={t}: nf = {nf}")
                    });
                }
            }
        }
    }
    out.push(c.finish());

    // Full rank of the (p+q)^2 normal forms over the normal-word basis.
    let mut c = CertCheck::new("units:rank", "all (p+q)^2 unit normal forms");
    let dim = ctx.dimension();
    let mut rows = Vec::with_capacity(n * n);
    let mut coords_ok = true;
    for u in units.iter() {
        let mut row = vec![Scalar::zero(); dim];
        for (w, coeff) in u.nf.iter() {
            match ctx.basis.index_of(w) {
                Some(idx) => row[idx] = coeff.clone(),
                None => coords_ok = false,
            }
        }
        rows.push(row);
    }
    let rank = if coords_ok { linalg::rank(rows) } else { 0 };
    c.instance(coords_ok && rank == n * n, || {
        format!("rank = {rank}, expected {}", n * n)
    });
    out.push(c.finish());

    // G[i,j] = A[i, j+p] + A[j+p, i].
    let mut c = CertCheck::new("units:span", "i in 1..=p; j in 1..=q");
    for i in 1..=p {
        for j in 1..=q {
            let d = &(&NcPoly::gen(GenId::new(i, j)) - &units.get(i, j + p).raw)
                - &units.get(j + p, i).raw;
            let nf = ctx.nf(&d);
            c.instance(nf.is_zero(), || format!("i={i} j={j}: nf = {nf}"));
        }
    }
    out.push(c.finish());

    // Rebuilding any entry with any admissible (j, t) choice gives the same
    // normal form.
    let mut c = CertCheck::new(
        "units:choice",
        "(i,k) in (1..=p+q)^2; j in 2..=q; t in 2..=p",
    );
    for i in 1..=n {
        for k in 1..=n {
            for j in 2..=q {
                for t in 2..=p {
                    let alt = matrix_unit_expr(ctx.shape, i, k, j, t);
                    let nf = ctx.nf(&alt);
                    c.instance(nf == units.get(i, k).nf, || {
                        format!("i={i} k={k} j={j} t={t}: nf = {nf}")
                    });
                }
            }
        }
    }
    out.push(c.finish());

    out
}

/// The central idempotent and its certificates.
#[derive(Clone, Debug)]
pub struct CenterElement {
    pub poly: NcPoly,
    pub certificates: Vec<Certificate>,
}

/// Constructs the central idempotent
/// `e = (1-q) G[1,1] G[1,1] G[1,j] G[1,j] + (1-p) G[1,1] G[1,1] G[t,1] G[t,1]
///      + sum_{i=2..p} G[i,1] G[i,1] + sum_{s=1..q} G[1,s] G[1,s]`
/// (j = t = 2) and certifies: idempotence, centrality, equality with the
/// diagonal unit sum, and that the exact centralizer has dimension 1.
pub fn center_element(ctx: &EnvelopeContext, units: &MatrixUnitTable) -> Result<CenterElement, UnitsError> {
    let (p, q) = (ctx.shape.p, ctx.shape.q);
    if p < 2 || q < 2 {
        return Err(UnitsError::ShapeTooSmall { p, q });
    }

    let mut e = gp(&[(1, 1), (1, 1), (1, 2), (1, 2)]).scaled(&int(1 - q as i64));
    e += &gp(&[(1, 1), (1, 1), (2, 1), (2, 1)]).scaled(&int(1 - p as i64));
    for i in 2..=p {
        e += &gp(&[(i, 1), (i, 1)]);
    }
    for s in 1..=q {
        e += &gp(&[(1, s), (1, s)]);
    }

    let mut certificates = Vec::new();

    let mut c = CertCheck::new("center:idempotent", "single instance");
    let nf = ctx.nf(&(&(&e * &e) - &e));
    c.instance(nf.is_zero(), || format!("nf(e*e - e) = {nf}"));
    certificates.push(c.finish());

    let mut c = CertCheck::new("center:central", "g over all generators");
    for g in ctx.shape.gens() {
        let gpoly = NcPoly::gen(g);
        let nf = ctx.nf(&(&(&e * &gpoly) - &(&gpoly * &e)));
        c.instance(nf.is_zero(), || format!("g={g}: nf = {nf}"));
    }
    certificates.push(c.finish());

    let mut c = CertCheck::new("center:unit-sum", "single instance");
    let mut diag_sum = NcPoly::zero();
    for i in 1..=units.n {
        diag_sum += &units.get(i, i).raw;
    }
    let nf = ctx.nf(&(&e - &diag_sum));
    c.instance(nf.is_zero(), || format!("nf(e - sum A[i,i]) = {nf}"));
    certificates.push(c.finish());

    // Exact centralizer: solve [x, G] = 0 over the normal-word basis.
    let mut c = CertCheck::new(
        "center:centralizer-dim",
        "commutator system over the normal-word basis",
    );
    let dim = ctx.dimension();
    let words = ctx.basis.words();
    let mut matrix: Vec<Vec<Scalar>> = Vec::new();
    let mut coords_ok = true;
    for g in ctx.shape.gens() {
        let gpoly = NcPoly::gen(g);
        // Column w of this block is the commutator nf(w*g - g*w).
        let mut block = vec![vec![Scalar::zero(); dim]; dim];
        for (col, w) in words.iter().enumerate() {
            let wpoly = NcPoly::from_word(w.clone());
            let comm = ctx.nf(&(&(&wpoly * &gpoly) - &(&gpoly * &wpoly)));
            for (v, coeff) in comm.iter() {
                match ctx.basis.index_of(v) {
                    Some(rowidx) => block[rowidx][col] = coeff.clone(),
                    None => coords_ok = false,
                }
            }
        }
        matrix.extend(block);
    }
    let kernel = if coords_ok {
        linalg::nullspace(&matrix)
    } else {
        Vec::new()
    };
    c.instance(coords_ok && kernel.len() == 1, || {
        format!("centralizer dimension = {}, expected 1", kernel.len())
    });
    // The unique solution is spanned by nf(e).
    let e_nf = ctx.nf(&e);
    let spanned = if kernel.len() == 1 && !e_nf.is_zero() {
        let mut e_vec = vec![Scalar::zero(); dim];
        let mut ok = true;
        for (w, coeff) in e_nf.iter() {
            match ctx.basis.index_of(w) {
                Some(idx) => e_vec[idx] = coeff.clone(),
                None => ok = false,
            }
        }
        ok && {
            // e_vec must be a scalar multiple of the kernel vector.
            let k = &kernel[0];
            let pivot = (0..dim).find(|&idx| !k[idx].is_zero());
            match pivot {
                Some(idx) if !e_vec[idx].is_zero() => {
                    let lambda = &e_vec[idx] / &k[idx];
                    (0..dim).all(|c| e_vec[c] == &k[c] * &lambda)
                }
                _ => false,
            }
        }
    } else {
        false
    };
    c.instance(spanned, || "nf(e) does not span the centralizer".to_string());
    certificates.push(c.finish());

    Ok(CenterElement {
        poly: e,
        certificates,
    })
}
