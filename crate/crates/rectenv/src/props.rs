//! Seeded randomized property suites: the triple-system axioms on random
//! rational matrices and the normal-form contracts on random polynomials.
//! Deterministic for a fixed seed.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::envelope::EnvelopeContext;
use crate::freealg::{ratio, GenId, NcPoly, Shape, Word};
use crate::jts::{check_jts_axioms, RectMatrix};
use crate::report::{CertCheck, Certificate};

fn random_matrix(shape: Shape, rng: &mut StdRng) -> RectMatrix {
    let mut m = RectMatrix::zero(shape.p, shape.q);
    for i in 1..=shape.p {
        for j in 1..=shape.q {
            m.set(i, j, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)));
        }
    }
    m
}

fn random_poly(shape: Shape, rng: &mut StdRng) -> NcPoly {
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let len = rng.gen_range(0..=4);
        let letters: Vec<GenId> = (0..len)
            .map(|_| {
                GenId::new(
                    rng.gen_range(1..=shape.p),
                    rng.gen_range(1..=shape.q),
                )
            })
            .collect();
        p.add_term(Word::from_letters(letters), ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)));
    }
    p
}

/// Outer symmetry and the 5-variable identity on `samples` random 5-tuples.
pub fn jts_axiom_suite(shape: Shape, samples: usize, seed: u64) -> Certificate {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cert = CertCheck::new(
        "props:jts-axioms",
        "random rational 5-tuples (seeded)",
    );
    for s in 0..samples {
        let tuple: Vec<RectMatrix> = (0..5).map(|_| random_matrix(shape, &mut rng)).collect();
        let ok = check_jts_axioms(&tuple[0], &tuple[1], &tuple[2], &tuple[3], &tuple[4])
            .expect("same shape");
        cert.instance(ok, || format!("sample {s} violates an axiom"));
    }
    cert.finish()
}

/// Idempotence, linearity, and multiplicativity of the normal form on
/// `samples` random polynomial pairs.
pub fn nf_property_suite(ctx: &EnvelopeContext, samples: usize, seed: u64) -> Certificate {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cert = CertCheck::new(
        "props:nf",
        "random polynomials and scalar pairs (seeded)",
    );
    for s in 0..samples {
        let x = random_poly(ctx.shape, &mut rng);
        let y = random_poly(ctx.shape, &mut rng);
        let a = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let b = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let nf_x = ctx.nf(&x);
        let nf_y = ctx.nf(&y);

        let idem = ctx.nf(&nf_x) == nf_x;
        let linear = ctx.nf(&(&x.scaled(&a) + &y.scaled(&b))) == &nf_x.scaled(&a) + &nf_y.scaled(&b);
        let mult = ctx.nf(&(&x * &y)) == ctx.nf(&(&nf_x * &nf_y));
        cert.instance(idem && linear && mult, || {
            format!(
                "sample {s}: idempotent={idem} linear={linear} multiplicative={mult}"
            )
        });
    }
    cert.finish()
}
