//! Check suites behind the commands. Each returns flat report objects carrying a `pass`
//! flag; the driver adds the schema version, command, seed and trial count.

use diracspace_core::courant::multi_pairing;
use diracspace_core::lagrangian::{
    ambient_dim, classify, from_pair, multidirac_tier, nambu_dirac_check, norom_subspace, tier_perp, to_pair,
    LinSubspace, TierSubspace,
};
use diracspace_core::linalg::Vector;
use diracspace_core::presentations::{verify_involutive, verify_isotropic, HamiltonianSpace, Presentation, Report};
use diracspace_core::sample::{self, SampleRng};
use diracspace_core::{Form, Poly, Rat, VField};
use diracspace_linfty::family::{relation_suite, tuple_seed, MultibracketFamily};
use diracspace_linfty::getzler::GetzlerFamily;
use diracspace_linfty::iso::IsoReport;
use diracspace_linfty::morphism::{
    canonical_families, canonical_morphism_sigma, check_lie2_morphism, p1_prequantization, Equation, MorphismSample,
};
use diracspace_linfty::sampling::{e0_element, getzler_tuple};
use diracspace_linfty::{bracket, GradedElem, LinftyError};
use diracspace_oracle::derived::{derived_check, master_equation, PIPELINE};
use diracspace_oracle::multibracket::{oracle_multibracket, MAX_ARITY};
use diracspace_oracle::OracleError;
use num::Zero;
use rand::Rng;
use serde_json::{json, Value};

pub type Record = serde_json::Map<String, Value>;

fn obj(v: Value) -> Record {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are objects"),
    }
}

pub fn passed(r: &Record) -> bool {
    r.get("pass").and_then(Value::as_bool).unwrap_or(false)
}

/// L-infinity relation residuals for arities `1..=arity_max`.
pub fn relation_records<F>(
    fam: &dyn MultibracketFamily,
    arity_max: usize,
    trials: usize,
    seed: u64,
    draw: F,
) -> Result<Vec<Record>, LinftyError>
where
    F: FnMut(u64, usize) -> Vec<GradedElem>,
{
    Ok(relation_suite(fam, 1..=arity_max, trials, seed, draw)?
        .into_iter()
        .map(|r| {
            obj(json!({
                "check": "relation",
                "family": r.family,
                "arity": r.arity,
                "sample_seed": r.sample_seed,
                "pass": r.pass(),
                "residual": r.residual,
            }))
        })
        .collect())
}

fn report_record(r: &Report) -> Record {
    obj(json!({
        "check": r.check,
        "status": if r.pass { "pass" } else { "fail" },
        "pass": r.pass,
        "witnesses": r.witnesses,
    }))
}

/// Fiber of the presentation at the origin, spanned by its generators there.
pub fn fiber_at_origin(pres: &Presentation) -> LinSubspace {
    let n = pres.dim();
    let p = pres.p();
    let zero = vec![Rat::zero(); n];
    let sections: Vec<(VField, Form)> = pres
        .generators()
        .iter()
        .map(|g| {
            let x = VField::from_const_vector(&g.x.comps().iter().map(|c| c.eval(&zero)).collect::<Vec<_>>());
            let a = Form::from_comps(n, p as i32, g.alpha.comps().iter().map(|(&m, c)| (m, Poly::constant(n, c.eval(&zero)))));
            (x, a)
        })
        .collect();
    LinSubspace::from_sections(n, p, &sections)
}

/// Isotropy and involutivity of a presentation, and the multivector tests on its fiber at
/// the origin (skipped when that fiber is not Lagrangian).
pub fn dirac_records(pres: &Presentation) -> Vec<Record> {
    let mut out = vec![report_record(&verify_isotropic(pres)), report_record(&verify_involutive(pres))];
    let fiber = fiber_at_origin(pres);
    if classify(&fiber).lagrangian {
        let nd = nambu_dirac_check(&fiber);
        for (check, ok) in [("nambu-iso-weak", nd.iso_weak), ("nambu-hismax", nd.hismax)] {
            out.push(obj(json!({
                "check": check,
                "status": if ok { "pass" } else { "fail" },
                "pass": ok,
                "fiber_dim": fiber.dim(),
                "witnesses": Vec::<String>::new(),
            })));
        }
    } else {
        for check in ["nambu-iso-weak", "nambu-hismax"] {
            out.push(obj(json!({
                "check": check,
                "status": "skip",
                "pass": true,
                "fiber_dim": fiber.dim(),
                "witnesses": ["fiber at the origin is not Lagrangian"],
            })));
        }
    }
    out
}

/// Degree-0 triples of the `E^0` algebra. Its degree -1 space is zero, so the equations
/// involving a degree -1 element are evaluated on the zero element.
pub fn e0_samples(seed: u64, n: usize, count: usize) -> Vec<MorphismSample> {
    let mut rng = sample::rng(seed);
    (0..count)
        .map(|_| MorphismSample {
            x: e0_element(&mut rng, n),
            y: e0_element(&mut rng, n),
            z: e0_element(&mut rng, n),
            f: Some(GradedElem::zero(-1)),
        })
        .collect()
}

/// Per-equation summary of the canonical Lie 2-morphism twisted by `sigma`. With a
/// non-closed `sigma` an extra record compares the ternary residual with
/// `i_Z i_Y i_X d(sigma)`.
pub fn canonical_morphism_records(sigma: Option<Form>, n: usize, allow_nonclosed: bool, trials: usize, seed: u64) -> Result<Vec<Record>, LinftyError> {
    let (src, dst) = canonical_families(sigma.clone(), n, allow_nonclosed)?;
    let m = canonical_morphism_sigma(sigma.clone(), allow_nonclosed)?;
    let samples = e0_samples(seed, n, trials);
    let report = check_lie2_morphism(&m, &src, &dst, &samples)?;
    let mut out = Vec::new();
    for eq in [Equation::ChainMap, Equation::BinaryDefect, Equation::MixedDefect, Equation::TernaryDefect] {
        let all: Vec<_> = report.residuals.iter().filter(|r| r.equation == eq).collect();
        let failures = report.failures(eq);
        let first = failures.first();
        out.push(obj(json!({
            "check": "morphism",
            "equation": eq.name(),
            "samples": all.len(),
            "failures": failures.len(),
            "pass": failures.is_empty(),
            "first_failure_sample": first.map(|r| r.sample),
            "first_residual": first.map(|r| r.residual.to_string()),
        })));
    }
    let dsigma = sigma.as_ref().map(|s| s.d()).filter(|d| !d.is_zero());
    if let Some(ds) = dsigma {
        let mut matches = 0;
        let mut nonzero = 0;
        let mut mismatches = Vec::new();
        for r in report.residuals.iter().filter(|r| r.equation == Equation::TernaryDefect) {
            let s = &samples[r.sample];
            let xs: Vec<&VField> = [&s.x, &s.y, &s.z].iter().map(|e| &e.as_section().expect("section").x).collect();
            let want = ds.interior(xs[0]).interior(xs[1]).interior(xs[2]);
            if r.residual.sub(&GradedElem::form(-1, want.clone()))?.is_zero() {
                matches += 1;
            } else {
                mismatches.push(format!("sample {}: {} vs {}", r.sample, r.residual, want));
            }
            if !want.is_zero() {
                nonzero += 1;
            }
        }
        out.push(obj(json!({
            "check": "ternary-residual-is-dsigma",
            "samples": matches + mismatches.len(),
            "nonzero": nonzero,
            "pass": mismatches.is_empty() && nonzero > 0,
            "witnesses": mismatches,
        })));
    }
    Ok(out)
}

/// Prequantization of a constant symplectic 2-form on `trials` random polynomial pairs.
pub fn prequantization_records(omega: &Form, trials: usize, seed: u64) -> Result<Vec<Record>, LinftyError> {
    let pq = p1_prequantization(omega)?;
    let n = omega.dim();
    let mut rng = sample::rng(seed);
    let mut failures = Vec::new();
    for t in 0..trials {
        let f = sample::poly(&mut rng, n, 3);
        let g = sample::poly(&mut rng, n, 3);
        let r = pq.check_pair(&f, &g)?;
        if !r.is_zero() {
            failures.push(format!("pair {t}: f = {f}, g = {g}"));
        }
    }
    Ok(vec![obj(json!({
        "check": "prequantization",
        "pairs": trials,
        "failures": failures.len(),
        "pass": failures.is_empty(),
        "witnesses": failures,
    }))])
}

pub fn iso_record(r: &IsoReport) -> Record {
    obj(json!({
        "check": "intertwining",
        "kind": r.kind,
        "samples": r.checks,
        "failures": r.failures.len(),
        "pass": r.pass(),
        "witnesses": r.failures,
    }))
}

fn random_vectors(rng: &mut SampleRng, count: usize, len: usize) -> Vec<Vector> {
    (0..count).map(|_| (0..len).map(|_| sample::small_int(rng, 2)).collect()).collect()
}

/// Lagrangian `{X + i_X w + a : X in S, a in ^p S°}` for a random `S` of admissible
/// dimension and a random constant `(p+1)`-form `w`.
pub fn random_lagrangian(rng: &mut SampleRng, n: usize, p: usize) -> LinSubspace {
    let mut sizes: Vec<usize> = (0..=n.saturating_sub(p)).collect();
    sizes.push(n);
    loop {
        let k = sizes[rng.gen_range(0..sizes.len())];
        let omega = sample::const_form(rng, n, p + 1);
        if let Ok(l) = norom_subspace(n, p, &random_vectors(rng, k, n), &omega) {
            return l;
        }
    }
}

/// Random subspace of `T + ^p T*` with small integer spanning vectors.
pub fn random_subspace(rng: &mut SampleRng, n: usize, p: usize) -> LinSubspace {
    let d = ambient_dim(n, p);
    let count = rng.gen_range(0..=d);
    LinSubspace::new(n, p, &random_vectors(rng, count, d))
}

pub fn lagrangian_roundtrip_records(n: usize, p: usize, trials: usize, seed: u64) -> Result<Vec<Record>, OracleError> {
    let mut out = Vec::new();
    for t in 0..trials {
        let s = tuple_seed(seed, 0, t);
        let mut rng = sample::rng(s);
        let l = random_lagrangian(&mut rng, n, p);
        let pair = to_pair(&l)?;
        let back = from_pair(&pair)?;
        let roundtrip = back == l && to_pair(&back)? == pair;
        let c = classify(&l);
        let near = if l.dim() > 0 { LinSubspace::new(n, p, &l.basis()[1..]) } else { random_subspace(&mut rng, n, p) };
        let cn = classify(&near);
        let agree = c.lagrangian == c.easychar && cn.lagrangian == cn.easychar;
        out.push(obj(json!({
            "check": "lagrangian-roundtrip",
            "trial": t,
            "sample_seed": s,
            "dim_l": l.dim(),
            "dim_s": pair.s.len(),
            "roundtrip": roundtrip,
            "classifiers_agree": agree,
            "pass": roundtrip && agree && c.lagrangian,
        })));
    }
    Ok(out)
}

/// Tier subspaces from the closed formula against brute-force perps, and their isotropy.
pub fn tier_checks(l: &LinSubspace) -> Result<(bool, bool, bool), OracleError> {
    let p = l.p();
    let tiers: Vec<TierSubspace> = (1..=p).map(|r| multidirac_tier(l, r)).collect::<Result<_, _>>()?;
    let base = TierSubspace::from_lagrangian(l);
    let mut formula = tiers[0].basis() == l.basis();
    let mut perps = true;
    let mut isotropic = true;
    for r in 1..=p {
        formula &= tier_perp(&base, r)? == tiers[r - 1];
        for s in 1..=p + 1 - r {
            perps &= tier_perp(&tiers[s - 1], r)? == tiers[r - 1];
            for a in tiers[r - 1].elements() {
                for b in tiers[s - 1].elements() {
                    isotropic &= multi_pairing(&a, &b)?.is_zero();
                }
            }
        }
    }
    Ok((formula, perps, isotropic))
}

pub fn tier_records(n: usize, p: usize, trials: usize, seed: u64) -> Result<Vec<Record>, OracleError> {
    let mut out = Vec::new();
    for t in 0..trials {
        let s = tuple_seed(seed, 0, t);
        let l = random_lagrangian(&mut sample::rng(s), n, p);
        let (formula, perps, isotropic) = tier_checks(&l)?;
        out.push(obj(json!({
            "check": "multidirac-tiers",
            "trial": t,
            "sample_seed": s,
            "dim_l": l.dim(),
            "formula_matches_perp": formula,
            "mutual_perps": perps,
            "isotropic": isotropic,
            "pass": formula && perps && isotropic,
        })));
    }
    Ok(out)
}

/// Engine against oracle on sampled tuples, the dictionary facts, and the master equation.
pub fn oracle_records(fam: &GetzlerFamily, arity_max: usize, trials: usize, seed: u64) -> Result<Vec<Record>, OracleError> {
    let mut out = Vec::new();
    for n in 1..=arity_max.min(MAX_ARITY) {
        for t in 0..trials {
            let s = tuple_seed(seed, n, t);
            let tuple = getzler_tuple(s, fam, n);
            let refs: Vec<&GradedElem> = tuple.iter().collect();
            let engine = bracket(fam, &refs)?;
            let oracle = oracle_multibracket(fam.r, fam.h.as_ref(), fam.n, &tuple)?;
            let ok = engine.sub(&oracle)?.is_zero();
            out.push(obj(json!({
                "pipeline": PIPELINE,
                "check": "oracle-compare",
                "family": fam.name(),
                "arity": n,
                "sample_seed": s,
                "engine": engine.to_string(),
                "oracle": oracle.to_string(),
                "pass": ok,
            })));
        }
    }
    for rep in derived_check(fam.r, fam.n, trials, seed)? {
        out.push(obj(json!({
            "pipeline": PIPELINE,
            "check": "derived-fact",
            "fact": rep.fact,
            "r": rep.r,
            "dim": rep.dim,
            "samples": rep.checks,
            "pass": rep.pass(),
            "witnesses": rep.failures,
        })));
    }
    let h = fam.h.clone().unwrap_or_else(|| Form::zero(fam.n, fam.r as i32 + 1));
    let (lhs, want) = master_equation(fam.r, &h)?;
    out.push(obj(json!({
        "pipeline": PIPELINE,
        "check": "master-equation",
        "closed": h.d().is_zero(),
        "self_bracket": lhs.to_string(),
        "pass": lhs == want && (lhs.is_zero() == h.d().is_zero()),
    })));
    Ok(out)
}

/// Observables fixtures sample from this space of Hamiltonian data.
pub fn hamiltonian_space(pres: &Presentation) -> HamiltonianSpace {
    HamiltonianSpace::new(pres, 3, 2)
}
