//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use augalex::algebra::{rat, LaurentPoly, RatFunc, Ring, UniPoly};
use augalex::augment::{
    branch_derivatives, branch_l_identity_holds, compute_branch_function, find_generating_cycles, linearized_matrix,
    solve_augmentation_family, verify_augmentation, Branch, Cycle,
};
use augalex::dga::{builtin_dga, Dga};
use augalex::extract::{
    alexander_from_augpoly, alexander_from_dga, builtin_augpoly, detect_degenerate_branch, integrand_of,
    normalize_alexander, recover_alexander, transform_sweep, validate_augpoly, AugPoly, Route, DEGENERATE_MESSAGE,
};
use augalex::groebner::{augpoly_from_dga, divide, Budget};
use augalex::novikov::{check_instance, NovikovData};
use augalex::oracle::{alexander_from_braid, BraidWord};
use augalex::par::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints("mu", c)
}

fn trefoil_delta() -> UniPoly {
    p(&[1, -1, 1])
}

fn trefoil() -> Result<Dga, String> {
    builtin_dga("rh_trefoil").map_err(|e| e.to_string())
}

fn trefoil_aug() -> Result<AugPoly, String> {
    builtin_augpoly("rh_trefoil").map_err(|e| e.to_string())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run_binary(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_augalex")).args(args).output().map_err(|e| e.to_string())
}

fn f_route() -> Outcome {
    let dga = trefoil()?;
    let fam = solve_augmentation_family(&dga, Branch::M, &Budget::unlimited())
        .map_err(|e| e.to_string())?
        .into_iter()
        .next()
        .ok_or("no branch-M family")?;
    let chords: Vec<String> = dga.chords(1).into_iter().map(String::from).collect();
    let y1: Vec<RatFunc> = chords
        .iter()
        .map(|c| match c.as_str() {
            "c21" => RatFunc::from_poly(p(&[0, 0, 2, -1])),
            "c22" => RatFunc::from_poly(p(&[0, -1, 2])),
            "b12" => RatFunc::from_poly(p(&[1, 0, -1])),
            _ => RatFunc::zero(),
        })
        .collect();
    let m1 = linearized_matrix(&dga, &fam, 1).map_err(|e| e.to_string())?;
    let image = m1.mul_vec(&y1).map_err(|e| e.to_string())?;
    ensure(image.iter().all(RatFunc::is_zero), || format!("y1 is not a cycle: {image:?}"))?;
    let bf = compute_branch_function(&dga, &fam, &Cycle { chords, coordinates: y1 }).map_err(|e| e.to_string())?;
    let (f_lambda, f_q) = branch_derivatives(&bf).map_err(|e| e.to_string())?;
    let want_lambda = RatFunc::from_poly(&(&p(&[0, 1]) * &p(&[-1, 1])) * &trefoil_delta());
    let want_q = RatFunc::from_poly(p(&[0, 2, -4, 6, -3]));
    ensure(f_lambda == want_lambda, || format!("dF/dlambda = {f_lambda}, expected {want_lambda}"))?;
    ensure(f_q == want_q, || format!("dF/dQ = {f_q}, expected {want_q}"))?;
    let out = alexander_from_dga(&dga, None, &Budget::unlimited(), Execution::default()).map_err(|e| e.to_string())?;
    ensure(out.delta() == &trefoil_delta(), || format!("delta = {}", out.delta()))?;
    Ok(format!("delta = {}, {} usable cycles agree", out.delta(), out.reports.len()))
}

fn aug_route() -> Outcome {
    let aug = trefoil_aug()?;
    let v = validate_augpoly(&aug).map_err(|e| e.to_string())?;
    ensure(v.passed(), || format!("validation failed: {v:?}"))?;
    let r = alexander_from_augpoly(&aug).map_err(|e| e.to_string())?;
    ensure(r.delta == trefoil_delta(), || format!("delta = {}", r.delta))?;
    Ok(format!("delta = {}, all three identities hold", r.delta))
}

fn oracle_agreement() -> Outcome {
    for word in [vec![1, 1, 1], vec![-1, -1, -1]] {
        let b = BraidWord::new(2, word.clone()).map_err(|e| e.to_string())?;
        let d = alexander_from_braid(&b).map_err(|e| e.to_string())?.delta;
        ensure(d == trefoil_delta(), || format!("{word:?} gives {d}"))?;
    }
    let unknot = alexander_from_braid(&BraidWord::new(1, vec![]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(unknot.delta == p(&[1]), || format!("unknot gives {}", unknot.delta))?;
    let out = run_binary(&["check", "--knot", "rh_trefoil", "--json"])?;
    ensure(out.status.success(), || format!("check exited {:?}", out.status.code()))?;
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(j["agree"] == true, || format!("routes disagree: {}", j["deltas"]))?;
    Ok("sigma1^3, sigma1^-3, unknot and the three-route check agree".into())
}

fn solver() -> Outcome {
    let dga = trefoil()?;
    let fams = solve_augmentation_family(&dga, Branch::M, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let a12 = RatFunc::new(p(&[-1, 1]), p(&[0, 0, 1])).map_err(|e| e.to_string())?;
    let a21 = RatFunc::from_poly(p(&[0, -1, 1]));
    let fam = fams
        .iter()
        .find(|f| f.values.get("a12") == Some(&a12) && f.values.get("a21") == Some(&a21))
        .ok_or_else(|| format!("expected family not among {} solutions", fams.len()))?;
    let check = verify_augmentation(&dga, fam).map_err(|e| e.to_string())?;
    ensure(check.passed(), || format!("nonzero residuals: {:?}", check.failures().collect::<Vec<_>>()))?;
    Ok(format!("a12 = {a12}, a21 = {a21}, residuals all zero"))
}

fn branch_l_identity() -> Outcome {
    let dga = trefoil()?;
    let fam = solve_augmentation_family(&dga, Branch::L, &Budget::unlimited())
        .map_err(|e| e.to_string())?
        .into_iter()
        .next()
        .ok_or("no branch-L family")?;
    let cycles = find_generating_cycles(&dga, &fam, Execution::default()).map_err(|e| e.to_string())?;
    let selected = cycles.iter().find(|c| !c.f_first.is_zero()).ok_or("every branch-L cycle has f_p = 0")?;
    ensure(branch_l_identity_holds(&selected.f_first, &selected.f_t), || {
        format!(
            "cycle {} ({}): f_p = {}, f_t = {}; lambda*f_p != (lambda-1)*f_t",
            selected.index,
            selected.cycle.to_json(),
            selected.f_first,
            selected.f_t
        )
    })?;
    Ok(format!("f_p = {}, f_t = {}", selected.f_first, selected.f_t))
}

fn elimination() -> Outcome {
    let dga = trefoil()?;
    let aug = trefoil_aug()?;
    let cand = augpoly_from_dga(&dga, &Budget::new(Duration::from_secs(60))).map_err(|e| e.to_string())?;
    let (q, r) = divide(&cand.poly, aug.poly()).map_err(|e| e.to_string())?;
    ensure(r.is_zero(), || format!("remainder {r}"))?;
    Ok(format!("candidate = ({}) * Aug_K", q))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect()
}

fn novikov_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let instances: Vec<NovikovData> = (0..100)
        .map(|_| {
            let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            NovikovData {
                psi_f: random_matrix(&mut rng, r, r),
                psi_c: random_matrix(&mut rng, r, s),
                eta: random_matrix(&mut rng, s, r),
                d0: random_matrix(&mut rng, s, s),
            }
        })
        .collect();
    for (i, nov) in instances.iter().enumerate() {
        let v = check_instance(nov, 12).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(v.passed(), || format!("instance {i} {nov:?}: {v:?}"))?;
    }
    Ok("100 instances pass all three identities".into())
}

/// Integer polynomial of degree at most 8 with nonzero constant term and value +-1 at 1.
fn random_delta(rng: &mut ChaCha8Rng) -> UniPoly {
    loop {
        let deg = rng.gen_range(0..=8);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        let target = if rng.gen_bool(0.5) { 1 } else { -1 };
        c[0] = target - c[1..].iter().sum::<i64>();
        if c[0] != 0 {
            return p(&c);
        }
    }
}

fn roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let d = random_delta(&mut rng);
        ensure([rat(1), rat(-1)].contains(&d.eval(&rat(1))), || format!("generator produced {d}"))?;
        let r = integrand_of(&LaurentPoly { low: 0, body: d.clone() });
        let got = recover_alexander(&r, Route::FRoute).map_err(|e| format!("{d}: {e}"))?;
        let want = normalize_alexander(&d).map_err(|e| e.to_string())?;
        ensure(got.delta == want, || format!("{d} came back as {}", got.delta))?;
    }
    Ok("100 random polynomials recovered".into())
}

fn transforms() -> Outcome {
    let aug = trefoil_aug()?;
    let sweep = transform_sweep(&aug, -3..=3, Execution::default());
    ensure(sweep.len() == 343, || format!("{} sweep points", sweep.len()))?;
    for pt in &sweep {
        match &pt.delta {
            Ok(d) if *d == trefoil_delta() => {}
            Ok(d) => return Err(format!("k={} (l,m)={:?}: delta {d}", pt.framing, pt.splitting)),
            Err(e) => return Err(format!("k={} (l,m)={:?}: {e}", pt.framing, pt.splitting)),
        }
    }
    Ok("343 transforms leave delta unchanged".into())
}

fn degenerate() -> Outcome {
    let aug = AugPoly::from_json(&std::fs::read_to_string(fixture("degenerate_aug.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(detect_degenerate_branch(&aug).map_err(|e| e.to_string())?, || "not flagged as degenerate".into())?;
    let out = run_binary(&["alex-aug", "--input", &fixture("degenerate_aug.json")])?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(3), || format!("exit code {:?}", out.status.code()))?;
    ensure(stderr.contains(DEGENERATE_MESSAGE), || format!("stderr: {stderr}"))?;
    Ok("exit 3 with the inapplicability message".into())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "trefoil F-route", limit: secs(1), check: f_route },
        Criterion { id: 2, name: "trefoil Aug-route", limit: secs(1), check: aug_route },
        Criterion { id: 3, name: "Burau oracle agreement", limit: secs(1), check: oracle_agreement },
        Criterion { id: 4, name: "augmentation solver", limit: secs(1), check: solver },
        Criterion { id: 5, name: "branch-L identity", limit: secs(1), check: branch_l_identity },
        Criterion { id: 6, name: "Groebner elimination", limit: secs(60), check: elimination },
        Criterion { id: 7, name: "Novikov identity suite", limit: secs(10), check: novikov_suite },
        Criterion { id: 8, name: "round-trip extraction", limit: secs(5), check: roundtrip },
        Criterion { id: 9, name: "transform invariance", limit: secs(10), check: transforms },
        Criterion { id: 10, name: "degenerate-branch path", limit: None, check: degenerate },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let took = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS  {:>2} {} ({took:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2} {} ({took:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
