//! Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
//! limits are fixed here; the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use stubborn_core::blowup::{
    delta_invariants_at, intersection_multiplicity, resultant_intersection_oracle, sos_invariant_of_power,
    IntersectionNumber,
};
use stubborn_core::coeff::{rat, Coeff};
use stubborn_core::fixtures;
use stubborn_core::newton::{exact_nonsos_test, replay_certificate};
use stubborn_core::poly::{parse, Polynomial};
use stubborn_core::realroots::{truncated_binomial_positive, truncated_binomial_upoly, univariate_nonneg_upoly};
use stubborn_core::sos::threshold::{stengle_restriction, ProbeEvidence};
use stubborn_core::sos::twosquare::truncated_binomial_form;
use stubborn_core::sos::{
    convex_sum_certificate, gram_problem, parse_weighted_identity, sdp_feasibility, sos_decompose,
    threshold_bisection, two_square_decomposition, verify_certificate, Family, SdpTolerances, ThresholdSettings,
    Verdict,
};
use stubborn_core::stubborn::{
    bezout_check, certify_stubborn, restriction_transfer, StubbornOptions, StubbornVerdict, StubbornnessCertificate,
};
use stubborn_core::upoly::UPoly;
use stubborn_core::zeros::{locate_real_zeros, Completeness};

/// Criterion 9: bracket width and target.
const C1_TOL: f64 = 0.05;
const C1_TARGET: f64 = 2.56548;
/// Criterion 10: bracket width.
const STENGLE_TOL: f64 = 1e-4;
/// Criterion 12(b): required number of random coprime pairs.
const NOETHER_PAIRS: usize = 20;
/// Criterion 12(e) and 12(f).
const TWO_SQUARE_TOL: f64 = 1e-8;
const CONVEX_TOL: f64 = 1e-6;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn certify(p: &Polynomial) -> Result<StubbornnessCertificate, String> {
    certify_stubborn(p, &StubbornOptions::default()).map_err(|e| e.to_string())
}

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn c1_stengle_deltas() -> Result<String, String> {
    let mut parts = Vec::new();
    for (at, want) in [("[0:0:1]", 3u64), ("[0:1:0]", 6)] {
        let t = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_stubborn"))
            .args(["delta", &fixture_path("stengle_T.poly"), "--at", at])
            .output()
            .map_err(|e| e.to_string())?;
        let secs = t.elapsed().as_secs_f64();
        ensure(out.status.success(), || format!("delta at {at} exited with {:?}", out.status.code()))?;
        let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let res = &r["results"];
        ensure(res["delta"] == want && res["delta_sos"] == want.to_string(), || {
            format!("at {at}: δ = {}, δ^sos = {}", res["delta"], res["delta_sos"])
        })?;
        ensure(secs < 1.0, || format!("delta at {at} took {secs:.2} s"))?;
        parts.push(format!("{at}: δ = δ^sos = {want} ({secs:.2} s)"));
    }
    Ok(parts.join(", "))
}

fn c2_motzkin() -> Result<String, String> {
    let c = certify(&fixtures::motzkin())?;
    ensure(c.completeness == Completeness::Complete, || "zero set not complete".into())?;
    ensure(c.zeros.len() == 6, || format!("{} zeros found", c.zeros.len()))?;
    ensure(c.total == rat(10, 1) && c.threshold == rat(9, 1), || format!("total {} threshold {}", c.total, c.threshold))?;
    ensure(c.verdict == StubbornVerdict::Stubborn, || "not stubborn".into())?;
    Ok("6 zeros, total 10 > 9, stubborn".into())
}

fn c3_robinson_s() -> Result<String, String> {
    let r = certify(&fixtures::robinson())?;
    ensure(r.zeros.len() == 10, || format!("Robinson: {} zeros", r.zeros.len()))?;
    ensure(r.zeros.iter().all(|z| z.round && z.delta_sos == Some(rat(1, 1))), || "Robinson: a zero is not round".into())?;
    ensure(r.total == rat(10, 1) && r.is_stubborn(), || format!("Robinson total {}", r.total))?;
    let s = certify(&fixtures::choi_lam_s())?;
    ensure(s.total == rat(10, 1) && s.is_stubborn(), || format!("S total {}", s.total))?;
    Ok(format!("R: 10 round zeros, total 10; S: {} zeros, total 10; both stubborn", s.zeros.len()))
}

fn c4_stengle() -> Result<String, String> {
    let c = certify(&fixtures::stengle())?;
    ensure(c.total == rat(9, 1), || format!("total {}", c.total))?;
    ensure(c.verdict == StubbornVerdict::Inconclusive, || "verdict is not inconclusive".into())?;
    Ok("total 9 = threshold 9, inconclusive".into())
}

fn c5_octic() -> Result<String, String> {
    let c = certify(&fixtures::octic())?;
    let mut vals: Vec<BigRational> = c.zeros.iter().filter_map(|z| z.delta_sos.clone()).collect();
    vals.sort();
    let want: Vec<BigRational> = [1, 1, 1, 1, 1, 6, 6].iter().map(|&k| rat(k, 1)).collect();
    ensure(vals == want, || format!("per-zero values {vals:?}"))?;
    ensure(c.total == rat(17, 1) && c.threshold == rat(16, 1), || format!("total {} threshold {}", c.total, c.threshold))?;
    ensure(c.delta_total == Some(21), || format!("δ total {:?}", c.delta_total))?;
    ensure(c.is_stubborn(), || "not stubborn".into())?;
    Ok("{1,1,1,1,1,6,6}, total 17 > 16, δ total 21, stubborn".into())
}

fn c6_exact_nonsos() -> Result<String, String> {
    let mut cases = vec![("M".to_string(), fixtures::motzkin(), rat(3, 1))];
    for a in [rat(1, 10), rat(1, 1), rat(3, 1)] {
        cases.push((format!("M_{a}"), fixtures::motzkin_a(&a), a));
    }
    for (name, p, a) in &cases {
        let out = exact_nonsos_test(p).map_err(|e| e.to_string())?;
        let cert = out.certificate().ok_or_else(|| format!("{name}: no certificate"))?;
        ensure(cert.coefficient == Coeff::from_rational(-a.clone()), || format!("{name}: coefficient {}", cert.coefficient))?;
        replay_certificate(p, cert).map_err(|e| format!("{name}: replay failed: {e}"))?;
    }
    // V₁ = (−∞, 0]: no certificate at or below 0.
    for a in [rat(0, 1), rat(-1, 1)] {
        let out = exact_nonsos_test(&fixtures::motzkin_a(&a)).map_err(|e| e.to_string())?;
        ensure(out.certificate().is_none(), || format!("certificate emitted at a = {a}"))?;
    }
    Ok("replayed for M, a ∈ {1/10, 1, 3} with coefficient −a; none for a ∈ {0, −1}".into())
}

fn c7_identity() -> Result<String, String> {
    let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).map_err(|e| e.to_string())?;
    ensure(id.terms.len() == 16, || format!("{} squares", id.terms.len()))?;
    let r = id.residual();
    ensure(r.is_zero(), || format!("residual {r}"))?;
    // Weights are polynomials in a; all are nonnegative at a = 1.0488 and the
    // last one, 15 − 13a³, is negative at a = 1.0489, so the identity
    // certifies exactly up to (15/13)^{1/3} ≈ 1.04886.
    let a_idx = id.vars.iter().position(|v| v == "a").ok_or("no variable a")?;
    let at = |w: &Polynomial, a: &BigRational| {
        let mut pt = vec![Coeff::zero(); id.vars.len()];
        pt[a_idx] = Coeff::from_rational(a.clone());
        w.with_vars(&id.vars).expect("weight variables").eval(&pt)
    };
    let below = rat(10488, 10000);
    let above = rat(10489, 10000);
    for (w, _) in &id.terms {
        let used = w.drop_unused_vars();
        ensure(used.vars().iter().all(|v| v == "a"), || format!("weight {w} depends on X"))?;
        for a in [rat(0, 1), below.clone()] {
            let v = at(w, &a);
            ensure(v.sign() != Some(std::cmp::Ordering::Less), || format!("weight {w} negative at a = {a}"))?;
        }
    }
    let last = &id.terms.last().unwrap().0;
    ensure(at(last, &above).sign() == Some(std::cmp::Ordering::Less), || "last weight still nonnegative at 1.0489".into())?;
    // 15 − 13a³ is decreasing on a ≥ 0 and the other weights are 3/2, 1, a,
    // so nonnegativity at the endpoints covers the whole interval.
    let (_, cert) = id.specialize("a", &below).map_err(|e| e.to_string())?;
    let target = fixtures::motzkin_a(&below).pow(3);
    let res = verify_certificate(&target, &cert).map_err(|e| e.to_string())?;
    ensure(res.is_zero() && cert.squares.iter().all(|s| s.weight >= BigRational::zero()), || "specialization fails".into())?;
    Ok("16 squares, residual exactly 0; weights ≥ 0 on [0, 1.0488], so (15/13)^(1/3) ≤ c₁".into())
}

fn c8_sdp() -> Result<String, String> {
    let tol = SdpTolerances::default();
    let m = sdp_feasibility(&gram_problem(&fixtures::motzkin(), true).map_err(|e| e.to_string())?, &tol);
    ensure(m.verdict == Verdict::Infeasible, || format!("M: {:?}", m.verdict))?;
    ensure(exact_nonsos_test(&fixtures::motzkin()).unwrap().certificate().is_some(), || "M: exact test disagrees".into())?;
    let half = sos_decompose(&fixtures::m_half(), &tol).map_err(|e| format!("M_1/2: {e}"))?;
    let half_res = verify_certificate(&fixtures::m_half(), &half.certificate).map_err(|e| e.to_string())?;
    ensure(half.sdp.verdict == Verdict::Feasible, || "M_1/2 not feasible".into())?;
    let cube = fixtures::m_a1().pow(3);
    let c = sdp_feasibility(&gram_problem(&cube, true).map_err(|e| e.to_string())?, &tol);
    ensure(c.verdict == Verdict::Feasible, || format!("M_1³: {:?}", c.verdict))?;
    let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).map_err(|e| e.to_string())?;
    let (_, exact) = id.specialize("a", &rat(1, 1)).map_err(|e| e.to_string())?;
    ensure(verify_certificate(&cube, &exact).map_err(|e| e.to_string())?.is_zero(), || "M_1³ identity fails".into())?;
    Ok(format!(
        "M infeasible (margin {:.2e}), M_1/2 feasible (certificate residual {}), M_1³ feasible (λ_min {:.2e}); exact results agree",
        m.evidence.as_ref().map_or(f64::NAN, |e| e.objective_margin),
        half_res,
        c.lambda_min
    ))
}

fn c9_c1() -> Result<String, String> {
    let mut s = ThresholdSettings::new(Family::MotzkinA, 3);
    s.lo = rat(1, 1);
    s.hi = rat(3, 1);
    s.tol = C1_TOL;
    let r = threshold_bisection(&s).map_err(|e| e.to_string())?;
    ensure(r.hi_f64 - r.lo_f64 <= C1_TOL, || format!("width {}", r.hi_f64 - r.lo_f64))?;
    ensure(r.lo_f64 <= C1_TARGET && C1_TARGET <= r.hi_f64, || format!("[{}, {}] misses {C1_TARGET}", r.lo_f64, r.hi_f64))?;
    Ok(format!("[{}, {}] ∋ {C1_TARGET} after {} probes", r.lo_f64, r.hi_f64, r.iterations))
}

fn c10_stengle_threshold() -> Result<String, String> {
    let mut s = ThresholdSettings::new(Family::StengleC, 1);
    s.tol = STENGLE_TOL;
    let r = threshold_bisection(&s).map_err(|e| e.to_string())?;
    ensure(&r.hi - &r.lo <= BigRational::from_float(STENGLE_TOL).unwrap(), || "bracket too wide".into())?;
    // lo² ≤ 256/27 ≤ hi², exactly
    let target = rat(256, 27);
    ensure(&r.lo * &r.lo <= target && target <= &r.hi * &r.hi, || format!("[{}, {}] misses √(256/27)", r.lo, r.hi))?;
    let lo_ok = univariate_nonneg_upoly(&stengle_restriction(&r.lo)).map_err(|e| e.to_string())?.nonnegative;
    let hi_ok = univariate_nonneg_upoly(&stengle_restriction(&r.hi)).map_err(|e| e.to_string())?.nonnegative;
    ensure(lo_ok && !hi_ok, || "endpoint nonnegativity does not separate".into())?;
    ensure(
        matches!(r.lo_probe.evidence, ProbeEvidence::ExactUnivariate { .. })
            && matches!(r.hi_probe.evidence, ProbeEvidence::ExactUnivariate { .. }),
        || "endpoint evidence is not exact".into(),
    )?;
    Ok(format!("[{}, {}] ∋ √(256/27) ≈ 3.07920, endpoints decided exactly", r.lo_f64, r.hi_f64))
}

fn c11_substitutions() -> Result<String, String> {
    let v2 = ["X1", "X2"];
    let mut sigma = BTreeMap::new();
    sigma.insert("X3".to_string(), parse("X1*X2", &v2).unwrap());
    sigma.insert("X4".to_string(), parse("1", &v2).unwrap());
    let m_affine = fixtures::motzkin().dehomogenize("X3").map_err(|e| e.to_string())?;
    restriction_transfer(&fixtures::choi_lam_q(), &sigma, &m_affine, None).map_err(|e| format!("Q: {e}"))?;
    let v3 = ["X1", "X2", "X3"];
    let mut zero = BTreeMap::new();
    zero.insert("X4".to_string(), Polynomial::zero_in(vec![]));
    zero.insert("X5".to_string(), Polynomial::zero_in(vec![]));
    let l = parse("X1^2 - X2^2 + X3^2", &v3).unwrap();
    restriction_transfer(&fixtures::horn(), &zero, &l.pow(2), None).map_err(|e| format!("Horn: {e}"))?;
    let alt = parse_weighted_identity(fixtures::HORN_ALT).map_err(|e| e.to_string())?;
    ensure(alt.target == fixtures::horn() || alt.target.with_vars(fixtures::horn().vars()).ok() == Some(fixtures::horn()), || {
        "alternative representation targets another form".into()
    })?;
    ensure(alt.residual().is_zero(), || format!("Horn alternative residual {}", alt.residual()))?;
    Ok("Q(x1,x2,x1x2,1) = M(x1,x2,1); F(X1,X2,X3,0,0) = (X1²−X2²+X3²)²; alternative Horn representation exact".into())
}

fn random_through_origin(rng: &mut ChaCha8Rng) -> Polynomial {
    let vars = vec!["x1".to_string(), "x2".to_string()];
    let terms = rng.gen_range(1..=4);
    let mut p = Polynomial::zero_in(vars.clone());
    for _ in 0..terms {
        let d = rng.gen_range(1..=4u32);
        let i = rng.gen_range(0..=d);
        p.add_term(vec![i, d - i], Coeff::from_int(rng.gen_range(-4..=4)));
    }
    p
}

fn c12_properties() -> Result<String, String> {
    // (a)
    let mut checked = 0;
    for name in fixtures::TERNARY {
        let p = fixtures::by_name(name).unwrap();
        for pt in locate_real_zeros(&p).map_err(|e| e.to_string())?.points {
            let base = delta_invariants_at(&p, &pt).map_err(|e| e.to_string())?.delta_sos.ok_or("δ^sos unknown")?;
            let f = p.dehomogenize(&p.vars()[pt.chart_index()]).unwrap();
            for k in [2u32, 3] {
                let v = sos_invariant_of_power(&f, &pt.affine_center(), k).map_err(|e| e.to_string())?;
                ensure(v == &base * rat((k * k) as i64, 1), || format!("(a) {name} at {pt}, k = {k}: {v} vs {base}"))?;
                checked += 1;
            }
        }
    }
    // (b)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let origin = vec![Coeff::zero(), Coeff::zero()];
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < NOETHER_PAIRS && attempts < 2000 {
        attempts += 1;
        let f = random_through_origin(&mut rng);
        let g = random_through_origin(&mut rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let Ok(IntersectionNumber::Finite(n)) = intersection_multiplicity(&f, &g, &origin) else { continue };
        let Ok(o) = resultant_intersection_oracle(&f, &g, &origin, attempts) else { continue };
        ensure(n == o, || format!("(b) I({f}, {g}) = {n}, oracle {o}"))?;
        pairs += 1;
    }
    ensure(pairs >= NOETHER_PAIRS, || format!("(b) only {pairs} coprime pairs"))?;
    // (c)
    let v = ["X1", "X2", "X3"];
    let mut complete = 0;
    for name in fixtures::TERNARY {
        let f = fixtures::by_name(name).unwrap();
        for l in ["X3", "X1", "X1 - X3", "X1^2 + X2^2 - 2*X3^2"] {
            let b = bezout_check(&f, &parse(l, &v).unwrap()).map_err(|e| e.to_string())?;
            if b.completeness == Completeness::Complete {
                ensure(b.total == b.expected, || format!("(c) {name} ∩ {l}: {} ≠ {}", b.total, b.expected))?;
                complete += 1;
            }
        }
    }
    ensure(complete > 0, || "(c) no complete intersection".into())?;
    // (d) Positivity holds for even truncation index; f_{n,r} with r odd has
    // odd degree and a real root.
    for n in 1..=20u32 {
        for r in (0..n).filter(|r| 2 * r < n) {
            ensure(truncated_binomial_positive(n, 2 * r), || format!("(d) f_{{{n},{}}} not positive", 2 * r))?;
        }
    }
    let t = UPoly::from_ints(&[0, 1]);
    for n in 1..=12u32 {
        for r in 1..=n {
            let d = truncated_binomial_upoly(n, r).derivative();
            ensure(d == truncated_binomial_upoly(n - 1, r - 1).scale(&Coeff::from_int(n as i64)), || format!("(d) eq1 at ({n},{r})"))?;
            if r < n {
                let rhs = truncated_binomial_upoly(n - 1, r).add(&t.mul(&truncated_binomial_upoly(n - 1, r - 1)));
                ensure(truncated_binomial_upoly(n, r) == rhs, || format!("(d) eq2 at ({n},{r})"))?;
            }
        }
    }
    // (e)
    let tv = vec!["t1".to_string(), "t2".to_string()];
    let mut worst: f64 = 0.0;
    let mut forms = 0;
    for n in 1..=11u32 {
        for r in (1..n).filter(|r| 2 * r < n) {
            let ts = two_square_decomposition(&truncated_binomial_form(n, 2 * r, &tv)).map_err(|e| format!("(e) F_{{{n},{}}}: {e}", 2 * r))?;
            worst = worst.max(ts.residual);
            forms += 1;
        }
    }
    ensure(worst < TWO_SQUARE_TOL, || format!("(e) residual {worst:.2e}"))?;
    // (f)
    let id = parse_weighted_identity(fixtures::MOTZKIN_A_CUBE).map_err(|e| e.to_string())?;
    let (m1, c1) = id.specialize("a", &rat(1, 1)).map_err(|e| e.to_string())?;
    let sum = convex_sum_certificate(&m1, Some(c1), 3, &fixtures::sum_squares_cubed(), None, 1, &SdpTolerances::default())
        .map_err(|e| format!("(f) {e}"))?;
    ensure(sum.power == 3 && sum.residual < CONVEX_TOL, || format!("(f) residual {:.2e}", sum.residual))?;
    Ok(format!(
        "(a) {checked} scalings; (b) {pairs} pairs; (c) {complete} complete Bézout checks; (d) f_{{n,2r}} > 0 and eq1/eq2 exact; (e) {forms} forms, max residual {worst:.1e}; (f) residual {:.1e}",
        sum.residual
    ))
}

fn main() {
    let criteria: &[(u32, &str, u64, Check)] = &[
        (1, "Stengle local deltas", 2, c1_stengle_deltas),
        (2, "Motzkin stubbornness", 5, c2_motzkin),
        (3, "Robinson and S", 10, c3_robinson_s),
        (4, "Stengle inconclusive", 5, c4_stengle),
        (5, "Octic", 10, c5_octic),
        (6, "Exact non-SOS", 1, c6_exact_nonsos),
        (7, "M_a^3 identity", 30, c7_identity),
        (8, "SDP sanity", 120, c8_sdp),
        (9, "Threshold c1", 300, c9_c1),
        (10, "Stengle threshold", 10, c10_stengle_threshold),
        (11, "Substitution identities", 1, c11_substitutions),
        (12, "Property suites", 300, c12_properties),
    ];
    let mut failed = 0;
    for &(id, name, limit, check) in criteria {
        let t = Instant::now();
        let result = check();
        let elapsed = t.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if elapsed < limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<24} {:>7.2} s (limit {:>3} s)  {}",
            if ok { "PASS" } else { "FAIL" },
            id,
            name,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
