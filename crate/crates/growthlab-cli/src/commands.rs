//! One function per subcommand.  Each returns the finished report plus the
//! exit code to use after the report is written (normally 0; `4` when a
//! requested check did not hold, `5` when a certificate stayed unknown).

use growthlab::asymptotic::{self, CertStatus};
use growthlab::cover::{self, ExactLimits};
use growthlab::fm::{self, NormStatus, SemigroupDesc};
use growthlab::functorial::{self, FiniteKernel, Hom};
use growthlab::product;
use growthlab::witness::OneSidedFamily;
use growthlab::{power, Budget, ElementSet, Group};

use crate::config::{ExperimentConfig, HomConfig};
use crate::error::{CliError, EXIT_UNKNOWN_CERT, EXIT_VERIFICATION};
use crate::report::{
    CoverReport, FmLiftOut, FmPowerReport, FmReport, GrowthReport, InnerBallEntry,
    InnerBallReport, InverseLengthReport, NormalizationReport, PaddingReport, ProfileEntryReport,
    ProfileReport, Report, SemigroupReport, SetReport,
};

pub struct Context {
    pub budget: Budget,
    pub limits: ExactLimits,
    pub seed: u64,
}

pub fn growth(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let s = cfg.primary_set(&group)?;
    let n_max = cfg
        .n_max
        .ok_or_else(|| CliError::Config("missing field: n_max".into()))? as u32;
    let records = product::growth_sequence(&s, n_max, ctx.budget)?;
    let estimate = product::estimate_degree(&records, product::default_fit_window(n_max)).ok();
    let formula_degree = product::bass_guivarch_degree(group.spec());
    Ok((
        Report::Growth(GrowthReport {
            records,
            estimate,
            formula_degree,
        }),
        0,
    ))
}

pub fn power_cmd(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let a = cfg.primary_set(&group)?;
    let h = cfg.require_h()?;
    let result = power(&a, h, ctx.budget)?;
    Ok((
        Report::Set(SetReport {
            size: result.len(),
            elements: result.coord_rows(),
        }),
        0,
    ))
}

pub fn cover_cmd(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let e = cfg.primary_set(&group)?;
    let f = cfg.second_set(&group)?;
    let mode = cfg.cover_mode.as_deref().unwrap_or("min");
    let (method, result) = match mode {
        "min" => ("min", cover::min_cover(&e, &f, ctx.limits, ctx.budget)?),
        "ruzsa" => ("ruzsa", cover::ruzsa_cover(&e, &f, ctx.budget)?),
        other => {
            return Err(CliError::Config(format!(
                "unknown cover_mode {other:?} (expected \"min\" or \"ruzsa\")"
            )))
        }
    };
    Ok((Report::Cover(CoverReport::from_cover(method, &result)), 0))
}

pub fn profile(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let a = cfg.primary_set(&group)?;
    let r = cfg.require_r()?;
    let (lo, hi) = cfg.h_range()?;
    let prof = asymptotic::approx_profile(&a, r, lo..=hi, ctx.limits, ctx.budget)?;
    Ok((
        Report::Profile(ProfileReport {
            r: prof.r,
            entries: prof
                .entries
                .iter()
                .map(|e| ProfileEntryReport {
                    h: e.h,
                    l: e.l,
                    exact: e.exact,
                })
                .collect(),
            truncated: prof.truncated,
        }),
        0,
    ))
}

pub fn semigroup(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let a = cfg.primary_set(&group)?;
    let cutoff = cfg.cutoff.unwrap_or(16);
    let cert = asymptotic::semigroup_certificate(&a, cutoff, ctx.budget)?;
    let inverse_lengths = cert
        .inverse_lengths
        .iter()
        .map(|(e, l)| InverseLengthReport {
            element: e.coords().to_vec(),
            length: *l,
        })
        .collect();
    if cert.status != CertStatus::Proven {
        return Ok((
            Report::Semigroup(SemigroupReport {
                status: format!("unknown(cutoff={cutoff})"),
                p: cert.p,
                inverse_lengths,
                q: None,
                padding: None,
            }),
            EXIT_UNKNOWN_CERT,
        ));
    }
    let q = asymptotic::inverse_bound(&a, &cert, ctx.budget)?.q;
    let padding = if a.contains_identity() {
        // With e in A the padding certificate is trivial at p = 1.
        let pad = asymptotic::padding_cert(&a, 1, 1..=4, ctx.budget)?;
        Some(pad)
    } else {
        let p = cfg.p.or(cert.p).ok_or_else(|| {
            CliError::Config("missing field: p (no padding exponent found)".into())
        })?;
        let (lo, hi) = match (cfg.h_min, cfg.h_max) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (1, 8),
        };
        Some(asymptotic::padding_cert(&a, p, lo..=hi, ctx.budget)?)
    };
    let padding = padding.map(|pad| PaddingReport {
        p: pad.p,
        representatives: pad.reps.iter().map(|w| w.coords().to_vec()).collect(),
        translates: pad.translates.coord_rows(),
        checked_h: pad.checked,
    });
    Ok((
        Report::Semigroup(SemigroupReport {
            status: "proven".into(),
            p: cert.p,
            inverse_lengths,
            q: Some(q),
            padding,
        }),
        0,
    ))
}

pub fn inner_ball(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let a = cfg.primary_set(&group)?;
    let s = cfg.second_set(&group)?;
    let theta = cfg.theta()?;
    let (lo, hi) = cfg.h_range()?;
    let checks = asymptotic::inner_ball_check(&a, &s, theta, lo..=hi, ctx.budget)?;
    let entries: Vec<InnerBallEntry> = checks
        .iter()
        .map(|&(h, holds)| InnerBallEntry { h, holds })
        .collect();

    let mut status = 0;
    let cover = if let Some(r) = cfg.r {
        let h = cfg.h.unwrap_or(hi);
        match asymptotic::criterion_cover(&a, &s, theta, r, h, ctx.budget) {
            Ok(c) => Some(CoverReport::from_cover("criterion", &c)),
            Err(growthlab::Error::CriterionFailed { .. }) => {
                status = EXIT_VERIFICATION;
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    Ok((
        Report::InnerBall(InnerBallReport {
            theta: format!("{}/{}", theta.numer(), theta.denom()),
            checks: entries,
            cover,
        }),
        status,
    ))
}

fn norm_status_report(f: &growthlab::Element, status: &NormStatus) -> NormalizationReport {
    match status {
        NormStatus::Proven {
            max_conjugate_length,
        } => NormalizationReport {
            element: f.coords().to_vec(),
            status: "proven".into(),
            detail: Some(format!("max conjugate length {max_conjugate_length}")),
        },
        NormStatus::Refuted {
            generator,
            conjugate,
            reason,
        } => NormalizationReport {
            element: f.coords().to_vec(),
            status: "refuted".into(),
            detail: Some(format!(
                "conjugate {conjugate:?} of generator {generator:?}: {reason}"
            )),
        },
        NormStatus::Unknown => NormalizationReport {
            element: f.coords().to_vec(),
            status: "unknown".into(),
            detail: None,
        },
    }
}

pub fn fm_check(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let f = cfg.primary_set(&group)?;
    let m = SemigroupDesc::new(cfg.generator_set(&group)?)?;
    let depth = cfg.depth.unwrap_or(6);
    let l = cfg
        .truncation
        .ok_or_else(|| CliError::Config("missing field: truncation".into()))?;
    let h = cfg.require_h()?;

    let mut normalization = Vec::new();
    let mut any_unknown = false;
    let mut any_refuted = false;
    for g in f.iter() {
        let status = fm::normalizes(g, &m, depth, ctx.budget)?;
        any_unknown |= matches!(status, NormStatus::Unknown);
        any_refuted |= matches!(status, NormStatus::Refuted { .. });
        normalization.push(norm_status_report(g, &status));
    }
    if any_unknown {
        return Ok((
            Report::Fm(FmReport {
                normalization,
                all_proven: false,
                power_check: None,
                lift: None,
            }),
            EXIT_UNKNOWN_CERT,
        ));
    }
    if any_refuted {
        // A definite negative answer: the report is the result.
        return Ok((
            Report::Fm(FmReport {
                normalization,
                all_proven: false,
                power_check: None,
                lift: None,
            }),
            0,
        ));
    }

    let check = fm::fm_power_check(&f, &m, h, l, depth, ctx.budget)?;
    let power_check = FmPowerReport {
        holds: check.holds,
        truncation: check.truncation,
        rhs_truncation: check.rhs_truncation,
        sigma: check.sigma,
        forward_included: check.forward_included,
        backward_included: check.backward_included,
        lhs_size: check.lhs_size,
    };
    let mut status = if check.holds { 0 } else { EXIT_VERIFICATION };

    let lift = if let Some(r) = cfg.r {
        let lifted = fm::lift_cover_fm(&f, &m, r, h, l, depth, ctx.limits, ctx.budget)?;
        if !lifted.verified {
            status = EXIT_VERIFICATION;
        }
        Some(FmLiftOut {
            cover: CoverReport::from_cover("fm-lift", &lifted.cover),
            truncation: lifted.truncation,
            rhs_truncation: lifted.rhs_truncation,
            verified: lifted.verified,
        })
    } else {
        None
    };
    Ok((
        Report::Fm(FmReport {
            normalization,
            all_proven: true,
            power_check: Some(power_check),
            lift,
        }),
        status,
    ))
}

pub fn witness(cfg: &ExperimentConfig, _ctx: &Context) -> Result<(Report, i32), CliError> {
    let family = OneSidedFamily::new();
    let group = cfg.group()?;
    if group != *family.group() {
        return Err(CliError::Config(
            "the witness command requires the heisenberg3 group".into(),
        ));
    }
    let x = cfg.translate_set(&group)?;
    let r = cfg.require_r()?;
    let h = cfg.require_h()?;
    let n_max = cfg.n_max.unwrap_or_else(|| family.default_n_max(&x));
    let report = family.find_witness(r, h, &x, n_max)?;
    Ok((Report::Witness(report), 0))
}

fn build_hom(cfg: &ExperimentConfig, group: &Group) -> Result<Hom, CliError> {
    let hom_cfg = cfg
        .hom
        .as_ref()
        .ok_or_else(|| CliError::Config("missing field: hom".into()))?;
    let hom = match hom_cfg {
        HomConfig::Identity => Hom::identity(group)?,
        HomConfig::AbelianizeHeisenberg => Hom::abelianize_heisenberg()?,
        HomConfig::ReduceMod { modulus } => Hom::reduce_mod(*modulus)?,
        HomConfig::CyclicReduce { modulus, divisor } => Hom::cyclic_reduce(*modulus, *divisor)?,
        HomConfig::ProjectBase => Hom::project_base(group)?,
        HomConfig::ProjectFinite => Hom::project_finite(group)?,
    };
    if hom.source() != group {
        return Err(CliError::Config(
            "homomorphism source does not match the configured group".into(),
        ));
    }
    Ok(hom)
}

pub fn push(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let hom = build_hom(cfg, &group)?;
    hom.law_check(ctx.seed, 500)?;
    let a = cfg.primary_set(&group)?;
    let x = cfg.translate_set(&group)?;
    let r = cfg.require_r()?;
    let h = cfg.require_h()?;
    let pushed = functorial::push_cover(&hom, &a, &x, r, h, ctx.budget)?;
    Ok((Report::Cover(CoverReport::from_cover("push", &pushed)), 0))
}

pub fn lift(cfg: &ExperimentConfig, ctx: &Context) -> Result<(Report, i32), CliError> {
    let group = cfg.group()?;
    let hom = build_hom(cfg, &group)?;
    hom.law_check(ctx.seed, 500)?;
    let a = cfg.primary_set(&group)?;
    let kernel = FiniteKernel::new(&hom, cfg.kernel_set(&group)?)?;
    let y_coords = cfg
        .translates
        .as_ref()
        .ok_or_else(|| CliError::Config("missing field: translates".into()))?;
    let y = ElementSet::from_coords(hom.target(), y_coords)?;
    let r = cfg.require_r()?;
    let h = cfg.require_h()?;
    let lifted = functorial::lift_cover(&hom, &kernel, &a, &y, r, h, ctx.budget)?;
    Ok((Report::Cover(CoverReport::from_cover("lift", &lifted)), 0))
}
