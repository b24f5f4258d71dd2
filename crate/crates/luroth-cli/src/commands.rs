//! One function per subcommand.  Every function is deterministic given
//! its arguments and the (prime, seed) configuration; user-facing
//! errors are returned as strings and reported as usage failures.

use luroth_core::acceptance;
use luroth_core::curves::{
    darboux_certificate, delta, gon_matrix_curve, infinitesimal_stabilizer_dim,
    jumping_expansion, random_darboux, random_sym_tensor, CurveWithGon,
};
use luroth_core::exactalg::{Matrix, PrimeField, Rationals};
use luroth_core::forms::TernaryForm;
use luroth_core::monad::{brill_noether, commutator_rank, four_term_check, numerology};
use luroth_core::rng::{
    sample_invertible, sample_matrix, sample_nonzero_vec, sample_symmetric, seeded, SeedRng,
};
use luroth_core::secant::{
    pfaffian_hypersurface_check, spanning_list_check, terracini_dimension, AgreementStatus,
    GenericityConfig, VarietySpec,
};
use luroth_core::tensor::{
    check_congruence_identity, contraction_segre, contraction_sym, DecompSample, SymTensor3,
    Tensor3,
};
use serde_json::{json, Value};

use crate::wire::{
    self, form_to_json, lines_from_json, matrix_from_json, sample_from_json, sample_to_json,
    segre_tensor_from_json, sym_tensor_from_json, vec_from_json, WireField,
};

/// How the reported value was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// An identity evaluated exactly; no genericity involved.
    Exact,
    /// All configured (prime, seed) pairs produced the same value.
    Agreed,
    /// Pairs disagreed or a generic draw could not be certified.
    Inconclusive,
}

impl Agreement {
    pub fn as_str(&self) -> &'static str {
        match self {
            Agreement::Exact => "exact",
            Agreement::Agreed => "agreed",
            Agreement::Inconclusive => "inconclusive",
        }
    }
}

/// Result of one command, before the report envelope is added.
pub struct Outcome {
    pub claim: &'static str,
    pub agreement: Agreement,
    pub passed: bool,
    pub result: Value,
}

pub type CmdResult = Result<Outcome, String>;

fn core_err(e: luroth_core::Error) -> String {
    format!("{e}")
}

fn first_prime_field(cfg: &GenericityConfig) -> Result<PrimeField, String> {
    let p = *cfg.primes.first().ok_or("at least one prime is required")?;
    PrimeField::new(p).map_err(core_err)
}

fn first_seed(cfg: &GenericityConfig) -> Result<u64, String> {
    cfg.seeds.first().copied().ok_or_else(|| "at least one seed is required".into())
}

fn require_n(n: Option<usize>) -> Result<usize, String> {
    n.ok_or_else(|| "--n is required unless --input is given".into())
}

/// Maximize a seeded rank-like quantity over retries within each
/// (prime, seed) pair, stopping early at `bound`.
fn per_pair_max(
    cfg: &GenericityConfig,
    bound: usize,
    mut draw: impl FnMut(&PrimeField, &mut SeedRng) -> Result<usize, String>,
) -> Result<(Vec<Value>, usize, bool), String> {
    let mut per_pair = Vec::new();
    let mut values = Vec::new();
    for (p, s) in cfg.pairs() {
        let field = PrimeField::new(p).map_err(core_err)?;
        let mut rng = seeded(s);
        let mut best = 0;
        for _ in 0..=cfg.retry_cap {
            best = best.max(draw(&field, &mut rng)?);
            if best == bound {
                break;
            }
        }
        per_pair.push(json!({"prime": p, "seed": s, "value": best}));
        values.push(best);
    }
    let agreed = values.windows(2).all(|w| w[0] == w[1]);
    let max = values.into_iter().max().unwrap_or(0);
    Ok((per_pair, max, agreed))
}

pub fn cmd_terracini(kind: wire::TensorKind, n: usize, k: usize, cfg: &GenericityConfig) -> CmdResult {
    let spec = match kind {
        wire::TensorKind::Segre => VarietySpec::Segre { n },
        wire::TensorKind::Sym => VarietySpec::SegreVeronese { n },
    };
    let rep = terracini_dimension(spec, k, cfg).map_err(core_err)?;
    let pair_ranks: Vec<Value> = cfg
        .pairs()
        .iter()
        .zip(&rep.pair_ranks)
        .map(|(&(p, s), &r)| json!({"prime": p, "seed": s, "rank": r}))
        .collect();
    let agreed = rep.status == AgreementStatus::Agreed;
    Ok(Outcome {
        claim: "secant-dimension",
        agreement: if agreed { Agreement::Agreed } else { Agreement::Inconclusive },
        passed: agreed,
        result: json!({
            "kind": rep.spec.kind_str(),
            "n": n,
            "k": k,
            "ambient_affine": rep.ambient_affine,
            "expected_affine": rep.expected_affine,
            "computed_affine": rep.computed_affine,
            "expected_projective": rep.expected_projective(),
            "computed_projective": rep.computed_projective(),
            "defect": rep.defect,
            "pair_ranks": pair_ranks,
        }),
    })
}

pub fn cmd_strassen_identity(
    n: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    let (rep, n, field_desc) = match input {
        Some(v) => {
            let q = Rationals;
            let t = segre_tensor_from_json(&q, v)?;
            let rep = check_congruence_identity(t.slice(0), t.slice(1), t.slice(2))
                .map_err(|e| format!("identity needs n >= 2 and invertible middle slice: {e}"))?;
            (rep, t.n(), q.describe())
        }
        None => {
            let n = require_n(n)?;
            let field = first_prime_field(cfg)?;
            let mut rng = seeded(first_seed(cfg)?);
            let p = sample_matrix(&field, n, n, &mut rng);
            let q = sample_invertible(&field, n, &mut rng, cfg.retry_cap).map_err(core_err)?;
            let r = sample_matrix(&field, n, n, &mut rng);
            let rep = check_congruence_identity(&p, &q, &r).map_err(core_err)?;
            (rep, n, field.describe())
        }
    };
    Ok(Outcome {
        claim: "congruence-identity",
        agreement: Agreement::Exact,
        passed: rep.identity_holds && rep.scalar_holds,
        result: json!({
            "n": n,
            "identity_holds": rep.identity_holds,
            "scalar_corollary_holds": rep.scalar_holds,
            "field": field_desc,
        }),
    })
}

pub fn cmd_generic_rank(
    kind: wire::TensorKind,
    n: Option<usize>,
    k: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    if let Some(v) = input {
        let q = Rationals;
        let (contraction, n) = match wire::tensor_kind(v)? {
            wire::TensorKind::Sym => {
                let t = sym_tensor_from_json(&q, v)?;
                (contraction_sym(&t), t.n())
            }
            wire::TensorKind::Segre => {
                let t = segre_tensor_from_json(&q, v)?;
                (contraction_segre(&t), t.n())
            }
        };
        let rank = contraction.rank();
        return Ok(Outcome {
            claim: "contraction-rank",
            agreement: Agreement::Exact,
            passed: true,
            result: json!({
                "n": n,
                "rank": rank,
                "size": 3 * n,
                "field": q.describe(),
            }),
        });
    }
    let n = require_n(n)?;
    let bound = match k {
        Some(k) => (2 * k).min(3 * n),
        None => 3 * n,
    };
    let (per_pair, rank, agreed) = per_pair_max(cfg, bound, |field, rng| {
        let m = match (kind, k) {
            (wire::TensorKind::Segre, Some(k)) => DecompSample::random_segre(field, n, k, rng)
                .realize(field)
                .contraction(),
            (wire::TensorKind::Sym, Some(k)) => {
                DecompSample::random_sym(field, n, k, rng).realize(field).contraction()
            }
            (wire::TensorKind::Segre, None) => {
                let t = Tensor3::new([
                    sample_matrix(field, n, n, rng),
                    sample_matrix(field, n, n, rng),
                    sample_matrix(field, n, n, rng),
                ])
                .map_err(core_err)?;
                contraction_segre(&t)
            }
            (wire::TensorKind::Sym, None) => {
                let t = SymTensor3::new([
                    sample_symmetric(field, n, rng),
                    sample_symmetric(field, n, rng),
                    sample_symmetric(field, n, rng),
                ])
                .map_err(core_err)?;
                contraction_sym(&t)
            }
        };
        Ok(m.rank())
    })?;
    Ok(Outcome {
        claim: "contraction-rank",
        agreement: if agreed { Agreement::Agreed } else { Agreement::Inconclusive },
        passed: agreed,
        result: json!({
            "kind": match kind { wire::TensorKind::Segre => "segre", wire::TensorKind::Sym => "sym" },
            "n": n,
            "k": k,
            "rank": rank,
            "rank_bound": bound,
            "per_pair": per_pair,
        }),
    })
}

pub fn cmd_pfaffian_hypersurface(n: usize, cfg: &GenericityConfig) -> CmdResult {
    let rep = pfaffian_hypersurface_check(n, cfg).map_err(core_err)?;
    let passed = rep.all_hold();
    // A false vanishing claim is a hard failure (it is an identity);
    // a missing nonvanishing certificate may just be unlucky draws.
    let agreement = if passed {
        Agreement::Agreed
    } else if !rep.deficient_pf_zero {
        Agreement::Agreed
    } else {
        Agreement::Inconclusive
    };
    Ok(Outcome {
        claim: "pfaffian-hypersurface",
        agreement,
        passed,
        result: json!({
            "n": n,
            "deficient_pf_zero": rep.deficient_pf_zero,
            "generic_pf_nonzero": rep.generic_pf_nonzero,
            "pencil_degree": rep.pencil_degree,
            "expected_degree": rep.expected_degree,
        }),
    })
}

pub fn cmd_spanning_list(n: usize, cfg: &GenericityConfig) -> CmdResult {
    let rep = spanning_list_check(n, cfg).map_err(core_err)?;
    Ok(Outcome {
        claim: "spanning-list",
        agreement: if rep.full_span { Agreement::Agreed } else { Agreement::Inconclusive },
        passed: rep.full_span,
        result: json!({
            "n": n,
            "k_points": rep.k_points,
            "ambient_affine": rep.ambient_affine,
            "rank": rep.rank,
            "full_span": rep.full_span,
            "certified_by": rep.certified_by.map(|(p, s)| json!({"prime": p, "seed": s})),
        }),
    })
}

fn delta_result<F: WireField>(
    field: &F,
    t: &SymTensor3<F>,
    k: Option<usize>,
    rng: &mut SeedRng,
) -> CmdResult {
    let curve = delta(t, rng).map_err(core_err)?;
    Ok(Outcome {
        claim: "determinantal-curve",
        agreement: Agreement::Exact,
        passed: true,
        result: json!({
            "n": t.n(),
            "k": k,
            "degree": curve.degree(),
            "is_zero": curve.is_zero(),
            "curve": form_to_json(&curve),
            "field": field.describe(),
        }),
    })
}

pub fn cmd_delta(
    n: Option<usize>,
    k: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    let mut rng = seeded(first_seed(cfg)?);
    match input {
        Some(v) => {
            let q = Rationals;
            let t = sym_tensor_from_json(&q, v)?;
            delta_result(&q, &t, None, &mut rng)
        }
        None => {
            let n = require_n(n)?;
            let k = k.unwrap_or(n);
            let field = first_prime_field(cfg)?;
            let t = random_sym_tensor(&field, n, k, &mut rng);
            delta_result(&field, &t, Some(k), &mut rng)
        }
    }
}

fn gon_result<F: WireField>(field: &F, lines: &[TernaryForm<F>], rng: &mut SeedRng) -> CmdResult {
    let id = gon_matrix_curve(field, lines, rng).map_err(core_err)?;
    Ok(Outcome {
        claim: "gon-determinant-identity",
        agreement: Agreement::Exact,
        passed: id.holds(),
        result: json!({
            "lines": lines.len(),
            "degree": id.det.degree(),
            "holds": id.holds(),
            "det": form_to_json(&id.det),
            "expansion": form_to_json(&id.expansion),
            "field": field.describe(),
        }),
    })
}

pub fn cmd_gon(n: Option<usize>, input: Option<&Value>, cfg: &GenericityConfig) -> CmdResult {
    let mut rng = seeded(first_seed(cfg)?);
    match input {
        Some(v) => {
            let q = Rationals;
            let lines = lines_from_json(&q, v)?;
            gon_result(&q, &lines, &mut rng)
        }
        None => {
            let n = require_n(n)?;
            let field = first_prime_field(cfg)?;
            let lines: Vec<_> = (0..=n)
                .map(|_| {
                    let u = sample_nonzero_vec(&field, 3, &mut rng);
                    TernaryForm::linear(field, &[u[0], u[1], u[2]])
                })
                .collect();
            gon_result(&field, &lines, &mut rng)
        }
    }
}

fn darboux_result<F: WireField>(field: &F, cert: &CurveWithGon<F>) -> Outcome {
    let vertices: Vec<Value> = cert
        .gon
        .vertices()
        .iter()
        .map(|(point, (i, j))| {
            json!({
                "point": wire::vec_to_json::<F>(point.as_slice()),
                "edges": [i, j],
            })
        })
        .collect();
    Outcome {
        claim: "vertex-incidence",
        agreement: Agreement::Exact,
        passed: cert.vertices_vanish,
        result: json!({
            "n": cert.sample.n(),
            "degree": cert.curve.degree(),
            "curve": form_to_json(&cert.curve),
            "edges": cert.gon.lines().iter().map(form_to_json).collect::<Vec<_>>(),
            "vertices": vertices,
            "vertices_vanish": cert.vertices_vanish,
            "curve_is_zero": cert.in_delta_kernel,
            "sample": sample_to_json(&cert.sample),
            "field": field.describe(),
        }),
    }
}

pub fn cmd_darboux(n: Option<usize>, input: Option<&Value>, cfg: &GenericityConfig) -> CmdResult {
    let mut rng = seeded(first_seed(cfg)?);
    match input {
        Some(v) => {
            let q = Rationals;
            let sample = sample_from_json(&q, v)?;
            let cert = darboux_certificate(&q, &sample, &mut rng)
                .map_err(|e| format!("input needs n+1 symmetric summands in general position: {e}"))?;
            Ok(darboux_result(&q, &cert))
        }
        None => {
            let n = require_n(n)?;
            let field = first_prime_field(cfg)?;
            let cert = random_darboux(&field, n, &mut rng, cfg.retry_cap).map_err(core_err)?;
            Ok(darboux_result(&field, &cert))
        }
    }
}

fn jumping_result<F: WireField>(
    field: &F,
    lines: &[TernaryForm<F>],
    h: &Matrix<F>,
    rng: &mut SeedRng,
) -> CmdResult {
    let (det_route, expansion_route) = jumping_expansion(field, lines, h, rng).map_err(core_err)?;
    let equal = det_route == expansion_route;
    Ok(Outcome {
        claim: "rank-one-expansion",
        agreement: Agreement::Exact,
        passed: equal,
        result: json!({
            "k": lines.len(),
            "n": h.cols(),
            "equal": equal,
            "det_route": form_to_json(&det_route),
            "expansion_route": form_to_json(&expansion_route),
            "field": field.describe(),
        }),
    })
}

pub fn cmd_jumping_expansion(
    n: Option<usize>,
    k: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    let mut rng = seeded(first_seed(cfg)?);
    match input {
        Some(v) => {
            let q = Rationals;
            let lines = lines_from_json(&q, v)?;
            let h = matrix_from_json(&q, v.get("h").ok_or("expected an \"h\" matrix")?)?;
            jumping_result(&q, &lines, &h, &mut rng)
        }
        None => {
            let n = require_n(n)?;
            let k = k.unwrap_or(n + 1);
            let field = first_prime_field(cfg)?;
            let lines: Vec<_> = (0..k)
                .map(|_| {
                    let u = sample_nonzero_vec(&field, 3, &mut rng);
                    TernaryForm::linear(field, &[u[0], u[1], u[2]])
                })
                .collect();
            let h = sample_matrix(&field, k, n, &mut rng);
            jumping_result(&field, &lines, &h, &mut rng)
        }
    }
}

pub fn cmd_stabilizer(
    n: Option<usize>,
    k: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    let (dim, n, k, field_desc) = match input {
        Some(v) => {
            let q = Rationals;
            let t = sym_tensor_from_json(&q, v)?;
            (infinitesimal_stabilizer_dim(&t), t.n(), None, q.describe())
        }
        None => {
            let n = require_n(n)?;
            let k = k.unwrap_or(n + 2);
            let field = first_prime_field(cfg)?;
            let mut rng = seeded(first_seed(cfg)?);
            let t = random_sym_tensor(&field, n, k, &mut rng);
            (infinitesimal_stabilizer_dim(&t), n, Some(k), field.describe())
        }
    };
    Ok(Outcome {
        claim: "infinitesimal-stabilizer",
        agreement: Agreement::Exact,
        passed: true,
        result: json!({
            "n": n,
            "k": k,
            "stabilizer_dim": dim,
            "field": field_desc,
        }),
    })
}

pub fn cmd_monad_h0e1(
    n: Option<usize>,
    r: usize,
    k: Option<usize>,
    input: Option<&Value>,
    cfg: &GenericityConfig,
) -> CmdResult {
    let (rep, k, field_desc) = match input {
        Some(v) => {
            let q = Rationals;
            let t = sym_tensor_from_json(&q, v)?;
            (brill_noether(&t, r).map_err(core_err)?, None, q.describe())
        }
        None => {
            let n = require_n(n)?;
            if r % 2 != 0 || r == 0 || r > n {
                return Err("--r must be even with 2 <= r <= n".into());
            }
            let k = k.unwrap_or(n + r / 2);
            let field = first_prime_field(cfg)?;
            let mut rng = seeded(first_seed(cfg)?);
            let t = random_sym_tensor(&field, n, k, &mut rng);
            (brill_noether(&t, r).map_err(core_err)?, Some(k), field.describe())
        }
    };
    let lower_bound = (r / 2) as i64;
    let passed = !rep.stability_violation() && (!rep.krn_member || rep.h0_e1 >= lower_bound);
    Ok(Outcome {
        claim: "section-count",
        agreement: Agreement::Exact,
        passed,
        result: json!({
            "n": rep.n,
            "r": rep.r,
            "k": k,
            "rank_h0f": rep.rank_h0f,
            "dimker_h0f1": rep.dimker_h0f1,
            "h0_e1": rep.h0_e1,
            "krn_member": rep.krn_member,
            "stability_violation": rep.stability_violation(),
            "lower_bound": lower_bound,
            "field": field_desc,
        }),
    })
}

pub fn cmd_four_term(n: Option<usize>, input: Option<&Value>, cfg: &GenericityConfig) -> CmdResult {
    let (ok, n, field_desc) = match input {
        Some(v) => {
            let q = Rationals;
            let u = vec_from_json(&q, v.get("u").ok_or("expected \"u\"")?, "u")?;
            let u: [_; 3] =
                u.try_into().map_err(|_| String::from("\"u\" must have 3 entries"))?;
            let vv = vec_from_json(&q, v.get("v").ok_or("expected \"v\"")?, "v")?;
            let n = vv.len();
            (four_term_check(&q, &u, &vv).map_err(core_err)?, n, q.describe())
        }
        None => {
            let n = require_n(n)?;
            let field = first_prime_field(cfg)?;
            let mut rng = seeded(first_seed(cfg)?);
            let u = sample_nonzero_vec(&field, 3, &mut rng);
            let v = sample_nonzero_vec(&field, n, &mut rng);
            (
                four_term_check(&field, &[u[0], u[1], u[2]], &v).map_err(core_err)?,
                n,
                field.describe(),
            )
        }
    };
    Ok(Outcome {
        claim: "rank-one-corank",
        agreement: Agreement::Exact,
        passed: ok,
        result: json!({"n": n, "corank_is_five": ok, "field": field_desc}),
    })
}

pub fn cmd_commutator(n: Option<usize>, input: Option<&Value>, cfg: &GenericityConfig) -> CmdResult {
    if let Some(v) = input {
        let q = Rationals;
        let p = matrix_from_json(&q, v.get("p").ok_or("expected \"p\"")?)?;
        let qm = matrix_from_json(&q, v.get("q").ok_or("expected \"q\"")?)?;
        let rank = commutator_rank(&p, &qm).map_err(core_err)?;
        return Ok(Outcome {
            claim: "commutator-rank",
            agreement: Agreement::Exact,
            passed: true,
            result: json!({"n": p.rows(), "rank": rank, "field": q.describe()}),
        });
    }
    let n = require_n(n)?;
    let expected = if n % 2 == 0 { n } else { n - 1 };
    let (per_pair, rank, agreed) = per_pair_max(cfg, expected, |field, rng| {
        let p = sample_symmetric(field, n, rng);
        let q = sample_symmetric(field, n, rng);
        commutator_rank(&p, &q).map_err(core_err)
    })?;
    Ok(Outcome {
        claim: "commutator-rank",
        agreement: if agreed { Agreement::Agreed } else { Agreement::Inconclusive },
        passed: agreed && rank == expected,
        result: json!({
            "n": n,
            "rank": rank,
            "expected_generic": expected,
            "per_pair": per_pair,
        }),
    })
}

pub fn cmd_numerology(r: usize, n: usize) -> CmdResult {
    let rep = numerology(r, n).map_err(core_err)?;
    Ok(Outcome {
        claim: "closed-form-counts",
        agreement: Agreement::Exact,
        passed: true,
        result: json!({
            "r": rep.r,
            "n": rep.n,
            "dim_m_sp": rep.dim_m_sp,
            "genus": rep.genus,
            "even_theta_count": rep.even_theta_count.to_string(),
            "even_theta_h0_zero": rep.even_theta_h0_zero.to_string(),
            "barth_product": rep.barth_product.as_ref().map(|b| b.to_string()),
            "jumping_family_dim": rep.jumping_family_dim,
            "pirola_h0": rep.pirola_h0,
            "pirola_theta_even": rep.pirola_theta_even,
            "bn_tangent_bound": rep.bn_tangent_bound,
            "secant_image_dim": rep.secant_image_dim,
        }),
    })
}

pub fn cmd_all_acceptance(cfg: &GenericityConfig) -> CmdResult {
    let results = acceptance::run_all(cfg);
    let passed = results.iter().all(|r| r.passed);
    let criteria: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "claim": r.slug,
                "label": r.label,
                "passed": r.passed,
                "details": r.details,
            })
        })
        .collect();
    Ok(Outcome {
        claim: "acceptance-suite",
        agreement: Agreement::Agreed,
        passed,
        result: json!({
            "criteria": criteria,
            "passed_count": results.iter().filter(|r| r.passed).count(),
            "total": results.len(),
        }),
    })
}
