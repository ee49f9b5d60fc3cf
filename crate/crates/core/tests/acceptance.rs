//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p linset-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use linset_core::blocking::{certify, line_through, LineIncidenceProfile};
use linset_core::linear_sets::{
    build_evaluation_set, feasible_spectra, predicted_spectrum, predicted_spectrum_line, predicted_stratum_counts,
    project_subgeometry, ConstructionSpec, ProjectionFrame, WeightOracle,
};
use linset_core::polyring::{count_r_stratum, count_reduced_closed_form};
use linset_core::projective::{cross_ratio, cross_ratio_orbit};
use linset_core::{make_field, Degree, Error, Field, FieldElement, PolyRing, ProjectivePoint};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn spectrum_big(s: &[u64]) -> Vec<BigUint> {
    big(s)
}

/// Nondecreasing partitions with `parts` entries in `1..=5`, sum at most 9.
fn partitions(parts: usize) -> Vec<Vec<usize>> {
    fn rec(parts: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == parts {
            if acc.iter().sum::<usize>() <= 9 {
                out.push(acc.clone());
            }
            return;
        }
        for t in min..=5 {
            acc.push(t);
            rec(parts, t, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, 1, &mut Vec::new(), &mut out);
    out
}

struct Case {
    q: u32,
    h: u32,
    s: u32,
    partition: Vec<usize>,
}

/// Every valid `(q, h, s, partition)` with `q ∈ {2, 3}`, `s | h ≤ 6`,
/// one or two extra parts, `t_i ≤ 5` and `k ≤ 9`.
fn sweep(l_values: &[usize]) -> Vec<Case> {
    let mut cases = Vec::new();
    for q in [2u32, 3] {
        for h in 2..=6u32 {
            for s in (2..=h).filter(|s| h % s == 0) {
                for &l in l_values {
                    for t in partitions(l + 1) {
                        let n = t.len();
                        if t[n - 2] + t[n - 1] <= s as usize + 1 {
                            cases.push(Case { q, h, s, partition: t });
                        }
                    }
                }
            }
        }
    }
    cases
}

fn field(q: u32, h: u32) -> Field {
    make_field(q, 1, h, None).expect("prime field tower")
}

fn criterion_1() -> Outcome {
    let cases = sweep(&[1, 2]);
    for c in &cases {
        let f = field(c.q, c.h);
        let spec = ConstructionSpec::new(&f, c.s, &c.partition).map_err(|e| e.to_string())?;
        let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
        let expected = count_reduced_closed_form(&c.partition, c.q as u64);
        ensure(BigUint::from(r.size()) == expected, || {
            format!("q={} h={} s={} t={:?}: size {} != {}", c.q, c.h, c.s, c.partition, r.size(), expected)
        })?;
        ensure(r.counting_identities_hold(), || format!("counting identities fail for {:?}", c.partition))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn criterion_2() -> Outcome {
    let cases = sweep(&[1]);
    for c in &cases {
        let f = field(c.q, c.h);
        let spec = ConstructionSpec::new(&f, c.s, &c.partition).map_err(|e| e.to_string())?;
        let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
        let predicted = predicted_spectrum_line(c.q as u64, &c.partition).map_err(|e| e.to_string())?;
        ensure(spectrum_big(r.spectrum()) == predicted, || {
            format!("q={} s={} t={:?}: {:?} != {:?}", c.q, c.s, c.partition, r.spectrum(), predicted)
        })?;
    }
    Ok(format!("{} line cases", cases.len()))
}

fn criterion_3() -> Outcome {
    let f = field(2, 6);
    let spec = ConstructionSpec::new(&f, 6, &[2, 3, 4]).map_err(|e| e.to_string())?;
    let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
    ensure(r.size() == 385, || format!("size {}", r.size()))?;
    ensure(r.spectrum() == [336, 44, 4, 1, 0, 0, 0, 0, 0], || format!("spectrum {:?}", r.spectrum()))?;
    // f_1 ≠ 0 stratum: q^8+q^7−q^6−q^5 of weight 1 and q^5 of weight 2
    let s1 = predicted_stratum_counts(2, &[2, 3, 4], 1).map_err(|e| e.to_string())?;
    let s2 = predicted_stratum_counts(2, &[2, 3, 4], 2).map_err(|e| e.to_string())?;
    ensure(s1 == BigUint::from(256u32 + 128 - 64 - 32) && s2 == BigUint::from(32u32), || {
        format!("stratum counts {s1}, {s2}")
    })?;
    let total = predicted_spectrum(2, &[2, 3, 4]).map_err(|e| e.to_string())?;
    ensure(total == spectrum_big(r.spectrum()), || format!("combined strata {total:?}"))?;
    Ok("size 385, spectrum (336, 44, 4, 1)".into())
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for q in [2u32, 3] {
        let f = field(q, 1);
        let ring = PolyRing::new(&f);
        for parts in 1..=3 {
            for t in partitions(parts).into_iter().chain(extra_bounds(parts)) {
                let n = ring.enumerate_reduced(&t).count();
                let expected = count_reduced_closed_form(&t, q as u64);
                ensure(BigUint::from(n) == expected, || format!("q={q} t={t:?}: {n} != {expected}"))?;
                checked += 1;
            }
        }
        // strata: first entry monic of exact degree n, the others of degree ≤ m_j
        for m in stratum_bounds() {
            for n in 0..=3usize {
                let mut bounds = vec![n + 1];
                bounds.extend(m.iter().map(|&x| x + 1));
                let brute =
                    ring.enumerate_reduced(&bounds).filter(|t| t.entries()[0].degree() == Degree::Finite(n)).count();
                let formula = count_r_stratum(n, &m, q as u64);
                ensure(BigUint::from(brute) == formula, || {
                    format!("q={q} n={n} m={m:?}: brute {brute} != formula {formula}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} counts"))
}

/// Bound vectors with sum above 9 that the size sweep leaves out.
fn extra_bounds(parts: usize) -> Vec<Vec<usize>> {
    if parts < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for a in 1..=5 {
        for b in a..=5 {
            for c in b..=5 {
                if a + b + c > 9 {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

fn stratum_bounds() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..=3 {
        out.push(vec![a]);
        for b in 0..=2 {
            out.push(vec![a, b]);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut points = 0;
    for (h, t) in [(5u32, vec![2usize, 2]), (5, vec![2, 3]), (6, vec![2, 3, 4])] {
        let f = field(2, h);
        let spec = ConstructionSpec::new(&f, h, &t).map_err(|e| e.to_string())?;
        let eval = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
        let frame = ProjectionFrame::build(&spec).map_err(|e| e.to_string())?;
        let proj = project_subgeometry(&frame).map_err(|e| e.to_string())?;
        ensure(proj.same_points_and_weights(&eval), || format!("{t:?}: projection and evaluation differ"))?;
        points += eval.size();
    }
    Ok(format!("{points} points agree with equal weights"))
}

fn criterion_6() -> Outcome {
    let cases = sweep(&[1, 2]);
    for c in &cases {
        let f = field(c.q, c.h);
        let spec = ConstructionSpec::new(&f, c.s, &c.partition).map_err(|e| e.to_string())?;
        ProjectionFrame::build(&spec).map_err(|e| format!("{:?}: {e}", c.partition))?;
    }
    // α of degree 2 over F_2 with a part of size 3: 1 + 1/α + 1/α² = 0
    let f = field(2, 6);
    let alpha = f.select_alpha(2).map_err(|e| e.to_string())?;
    let bad = ConstructionSpec::new_unchecked(&f, alpha, &[3, 1]);
    match ProjectionFrame::build(&bad) {
        Err(Error::DisjointnessFailure(_)) => {}
        other => return Err(format!("undersized alpha gave {other:?}")),
    }
    Ok(format!("{} frames disjoint, undersized alpha rejected", cases.len()))
}

fn criterion_7() -> Outcome {
    for q in [2u64, 3] {
        let k4 = feasible_spectra(4, &BigUint::from(q.pow(3) + 1), q, 4);
        let want4 = vec![big(&[q.pow(3), 0, 1, 0]), big(&[q.pow(3) - q, q + 1, 0, 0])];
        ensure(k4 == want4, || format!("q={q} k=4: {k4:?}"))?;
        let k5 = feasible_spectra(5, &BigUint::from(q.pow(4) + 1), q, 5);
        let want5 = vec![
            big(&[q.pow(4), 0, 0, 1, 0]),
            big(&[q.pow(4) - q * q, q * q, 1, 0, 0]),
            big(&[q.pow(4) - q * q - q, q * q + q + 1, 0, 0, 0]),
        ];
        ensure(k5 == want5, || format!("q={q} k=5: {k5:?}"))?;
    }
    Ok("2 spectra for k=4, 3 for k=5, q in {2, 3}".into())
}

fn criterion_8() -> Outcome {
    let f = field(2, 6);
    let spec = ConstructionSpec::new(&f, 6, &[2, 2, 3]).map_err(|e| e.to_string())?;
    let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
    let cert = certify(&f, &r).map_err(|e| e.to_string())?;
    let lines: u64 = cert.secant_histogram.values().sum();
    ensure(cert.size == 97, || format!("size {}", cert.size))?;
    ensure(lines == 4161, || format!("{lines} lines scanned"))?;
    ensure(cert.blocking, || "(2,2,3) does not block".into())?;
    ensure(cert.minimal, || "(2,2,3) is not minimal".into())?;
    ensure(cert.small, || "(2,2,3) is not small".into())?;
    ensure(cert.redei_lines.is_empty(), || format!("{} Redei lines", cert.redei_lines.len()))?;
    ensure(cert.double_count_holds, || "double counting fails".into())?;

    let spec = ConstructionSpec::new(&f, 6, &[1, 1, 5]).map_err(|e| e.to_string())?;
    let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
    let cert115 = certify(&f, &r).map_err(|e| e.to_string())?;
    ensure(cert115.redei_lines.len() >= 2, || format!("(1,1,5): {} Redei lines", cert115.redei_lines.len()))?;
    Ok(format!(
        "(2,2,3): 97 points block all 4161 lines, minimal, small, 0 Redei lines; (1,1,5): {} Redei lines",
        cert115.redei_lines.len()
    ))
}

fn all_in_subfield(f: &Field, lambda: FieldElement, d: u32) -> bool {
    cross_ratio_orbit(f, lambda).iter().all(|&x| f.prime_subfield_membership(x, d).expect("d divides the degree"))
}

fn criterion_9() -> Outcome {
    let mut summary = Vec::new();
    for p in [2u32, 3] {
        let f = field(p, 6);
        let alpha = f.select_alpha(2).map_err(|e| e.to_string())?;
        let l1 = build_evaluation_set(&ConstructionSpec::with_alpha(&f, alpha, &[1, 2]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let pts: Vec<&ProjectivePoint> = l1.points().iter().map(|(p, _)| p).collect();
        let n = pts.len();
        ensure(n as u32 == p * p + 1, || format!("|L_1| = {n}"))?;
        let mut subsets = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let cr = cross_ratio(&f, [pts[a], pts[b], pts[c], pts[d]]).map_err(|e| e.to_string())?;
                        ensure(all_in_subfield(&f, cr, 2), || format!("p={p}: cross-ratio outside F_{{p^2}}"))?;
                        subsets += 1;
                    }
                }
            }
        }
        let expected = n * (n - 1) * (n - 2) * (n - 3) / 24;
        ensure(subsets == expected, || format!("{subsets} subsets"))?;

        let beta = f.select_alpha(3).map_err(|e| e.to_string())?;
        let l2 = build_evaluation_set(&ConstructionSpec::with_alpha(&f, beta, &[1, 2]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        let frame: Vec<ProjectivePoint> = [[o, z], [z, o], [o, o], [o, beta]]
            .iter()
            .map(|c| ProjectivePoint::new(&f, c.to_vec()).expect("nonzero"))
            .collect();
        ensure(frame.iter().all(|x| l2.weight_of(x).is_some()), || "frame not inside L_2".into())?;
        let cr = cross_ratio(&f, [&frame[0], &frame[1], &frame[2], &frame[3]]).map_err(|e| e.to_string())?;
        ensure(cr == beta, || "frame cross-ratio differs from beta".into())?;
        ensure(
            cross_ratio_orbit(&f, cr).iter().all(|&x| !f.prime_subfield_membership(x, 2).expect("2 divides 6")),
            || "beta orbit meets F_{p^2}".into(),
        )?;
        summary.push(format!("p={p}: |L_1|={n}, {subsets} 4-subsets"));
    }
    Ok(summary.join("; "))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for c in sweep(&[1, 2]).into_iter().filter(|c| c.q == 2) {
        let f = field(2, c.h);
        let spec = ConstructionSpec::new(&f, c.s, &c.partition).map_err(|e| e.to_string())?;
        let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
        let oracle = WeightOracle::new(&f, &r).map_err(|e| e.to_string())?;
        let stride = (r.size() / 32).max(1);
        // always include the heaviest point
        let heaviest = r.points().iter().max_by_key(|(_, w)| *w).expect("nonempty");
        for (p, w) in r.points().iter().step_by(stride).chain(std::iter::once(heaviest)) {
            let via_reduction = oracle.weight(p).map_err(|e| e.to_string())?;
            ensure(via_reduction == *w as usize, || {
                format!("h={} t={:?}: weight {w} vs field reduction {via_reduction}", c.h, c.partition)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} sampled points"))
}

fn secant_probe() -> Outcome {
    // the line through ⟨(1, f_2(α), 0)⟩ and ⟨(1, 0, f_3(α))⟩ with deg f_2 = 1,
    // deg f_3 = 2, gcd 1, meets the (2,2,3) set in q + 1 points
    let f = field(2, 6);
    let spec = ConstructionSpec::new(&f, 6, &[2, 2, 3]).map_err(|e| e.to_string())?;
    let r = build_evaluation_set(&spec).map_err(|e| e.to_string())?;
    let a = spec.alpha();
    let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
    let f2 = a;
    let f3 = f.add(f.mul(a, a), o);
    let p = ProjectivePoint::new(&f, vec![o, f2, z]).map_err(|e| e.to_string())?;
    let q = ProjectivePoint::new(&f, vec![o, z, f3]).map_err(|e| e.to_string())?;
    let line = line_through(&f, &p, &q).map_err(|e| e.to_string())?;
    let pts: Vec<ProjectivePoint> = r.points().iter().map(|(p, _)| p.clone()).collect();
    let profile = LineIncidenceProfile::new(&f, &pts).map_err(|e| e.to_string())?;
    let n = profile.count_on(&line).ok_or("line missing from scan")?;
    ensure(n == 3, || format!("secant meets {n} points"))?;
    Ok("(2,2,3): the probe line meets the set in q + 1 = 3 points".into())
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "1", name: "size formula sweep", limit: Some(Duration::from_secs(10)), run: criterion_1 },
        Criterion { id: "2", name: "line-case weight spectrum", limit: None, run: criterion_2 },
        Criterion { id: "3", name: "worked example (2,3,4)", limit: Some(Duration::from_secs(1)), run: criterion_3 },
        Criterion { id: "4", name: "counting lemmas", limit: None, run: criterion_4 },
        Criterion { id: "5", name: "projection agrees with evaluation", limit: None, run: criterion_5 },
        Criterion { id: "6", name: "axis disjointness", limit: None, run: criterion_6 },
        Criterion { id: "7", name: "feasible spectra", limit: None, run: criterion_7 },
        Criterion { id: "8", name: "blocking certification", limit: Some(Duration::from_secs(30)), run: criterion_8 },
        Criterion { id: "9", name: "cross-ratio obstruction", limit: None, run: criterion_9 },
        Criterion { id: "10", name: "field-reduction weight oracle", limit: None, run: criterion_10 },
        Criterion { id: "B", name: "(q+1)-secant probe", limit: None, run: secant_probe },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.limit.filter(|&l| elapsed > l);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(l)) => ("FAIL", format!("{d}; took longer than {l:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{:>2}] {}: {detail} ({:.2?})", c.id, c.name, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
