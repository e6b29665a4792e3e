//! Verification pipeline shared by the CLI, the FFI layer, and the
//! acceptance tests: build the envelope, run the selected certificate
//! suites, and aggregate a summary. Build failures are reported as failed
//! certificates, never as panics.

use crate::envelope::{
    self, build_from_generators, center_element, certify_corollary_identities,
    certify_generators, certify_lemma_identities, certify_unit_table, ideal_generators,
    matrix_units, BuildError, BuildOptions, EnvelopeContext, IdealGenerators,
};
use crate::props;
use crate::report::{Certificate, Summary};
use crate::representation::{
    center_image, certify_theta_homomorphism, isomorphism_certificate, IsoCertificate,
};

/// Default sample counts for the seeded property suites.
pub const DEFAULT_JTS_SAMPLES: usize = 1000;
pub const DEFAULT_NF_SAMPLES: usize = 500;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    Lemma,
    Corollary,
    Units,
    Center,
    Iso,
    Props,
}

impl Suite {
    fn wants(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub p: usize,
    pub q: usize,
    pub options: BuildOptions,
    pub suite: Suite,
    pub seed: u64,
    pub jts_samples: usize,
    pub nf_samples: usize,
}

impl VerifyConfig {
    pub fn new(p: usize, q: usize) -> Self {
        VerifyConfig {
            p,
            q,
            options: BuildOptions::default(),
            suite: Suite::All,
            seed: 0,
            jts_samples: DEFAULT_JTS_SAMPLES,
            nf_samples: DEFAULT_NF_SAMPLES,
        }
    }
}

pub struct VerifyOutcome {
    pub certificates: Vec<Certificate>,
    pub summary: Summary,
    pub pass: bool,
    /// Present when the build succeeded.
    pub context: Option<EnvelopeContext>,
}

/// Runs the selected suites with the canonical ideal generators.
/// Shape errors (for example p = q without the override) are returned as
/// errors because nothing can be certified; completion or basis failures
/// are reported inside the outcome.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyOutcome, BuildError> {
    let theorem_mode = envelope::validate_shape(cfg.p, cfg.q, cfg.options.allow_unproven)?;
    let generators = ideal_generators(cfg.p, cfg.q);
    Ok(verify_with_generators(cfg, generators, theorem_mode))
}

/// Runs the pipeline with an explicit generator list; negative-control runs
/// pass a tampered list here.
pub fn verify_with_generators(
    cfg: &VerifyConfig,
    generators: IdealGenerators,
    theorem_mode: bool,
) -> VerifyOutcome {
    let mut certificates = Vec::new();

    let ctx = match build_from_generators(cfg.p, cfg.q, generators, cfg.options, theorem_mode) {
        Ok(ctx) => ctx,
        Err(err) => {
            let reason = format!("build failed: {err}");
            certificates.push(Certificate::aborted("build", reason.clone()));
            if cfg.suite.wants(Suite::Iso) {
                certificates.extend(IsoCertificate::from_build_failure(&reason).certificates);
            }
            let summary = Summary {
                p: cfg.p,
                q: cfg.q,
                dimension: None,
                status: "fail".to_string(),
            };
            return VerifyOutcome {
                certificates,
                summary,
                pass: false,
                context: None,
            };
        }
    };

    certificates.push(certify_generators(&ctx));

    if cfg.suite.wants(Suite::Lemma) {
        certificates.extend(certify_lemma_identities(&ctx));
    }
    if cfg.suite.wants(Suite::Corollary) {
        certificates.extend(certify_corollary_identities(&ctx));
    }

    let needs_units = cfg.suite.wants(Suite::Units)
        || cfg.suite.wants(Suite::Center)
        || cfg.suite.wants(Suite::Iso);
    let units = if needs_units {
        match matrix_units(&ctx) {
            Ok(units) => Some(units),
            Err(err) => {
                certificates.push(Certificate::aborted("units:construction", err.to_string()));
                None
            }
        }
    } else {
        None
    };

    if let Some(units) = &units {
        if cfg.suite.wants(Suite::Units) {
            certificates.extend(certify_unit_table(&ctx, units));
        }
        if cfg.suite.wants(Suite::Center) {
            match center_element(&ctx, units) {
                Ok(center) => {
                    certificates.extend(center.certificates.clone());
                    certificates.push(center_image(&ctx, &center.poly));
                }
                Err(err) => {
                    certificates
                        .push(Certificate::aborted("center:construction", err.to_string()));
                }
            }
        }
        if cfg.suite.wants(Suite::Iso) {
            certificates.push(certify_theta_homomorphism(cfg.p, cfg.q));
            certificates.extend(isomorphism_certificate(&ctx, units).certificates);
        }
    }

    if cfg.suite.wants(Suite::Props) {
        certificates.push(props::jts_axiom_suite(ctx.shape, cfg.jts_samples, cfg.seed));
        certificates.push(props::nf_property_suite(&ctx, cfg.nf_samples, cfg.seed));
    }

    let pass = certificates.iter().all(|c| c.pass);
    let summary = Summary {
        p: cfg.p,
        q: cfg.q,
        dimension: Some(ctx.dimension()),
        status: if pass { "pass" } else { "fail" }.to_string(),
    };
    VerifyOutcome {
        certificates,
        summary,
        pass,
        context: Some(ctx),
    }
}
