//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines appear in plain `cargo test` output.

use std::collections::{BTreeMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use ratcat::assoc::{
    admissible_set, build_ass, build_ass_hat, certify_shelling, check_alexander_duality,
    check_collapse_conjecture, check_identities, noncrossing, shelling_order,
    CollapseWitness, Diagonal,
};
use ratcat::dyck::{cycle_rectify, enumerate, DyckPath, RunKind, RunWord};
use ratcat::ncpart::{
    csp_check, homogeneous, inhomogeneous, verify_order_filter, verify_promotion_rotation,
    SetPartition,
};
use ratcat::numbers::{
    derivation_chain, derived_catalan, kirkman, kreweras, narayana, rational_catalan,
    RunTypeVector,
};
use ratcat::scomplex::DEFAULT_COLLAPSE_BUDGET;
use ratcat::{CoprimePair, Verdict};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pair(a: u32, b: u32) -> CoprimePair {
    CoprimePair::new(a, b).unwrap()
}

fn pairs(max_sum: u32) -> Vec<CoprimePair> {
    CoprimePair::ascending_up_to_sum(max_sum)
}

fn u64_of(n: &num_bigint::BigUint) -> u64 {
    n.to_u64().expect("fits in u64")
}

fn c1_exact_counts() -> Outcome {
    let p = pair(5, 8);
    ensure!(u64_of(&rational_catalan(p)) == 99, "Cat(5,8) = {}", rational_catalan(p));
    let chain: Vec<u64> = derivation_chain(p)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|(_, c)| u64_of(c))
        .collect();
    ensure!(chain == [99, 7, 2, 1], "chain {chain:?}");
    Ok("Cat(5,8)=99, chain [99,7,2,1]".into())
}

fn c2_enumeration() -> Outcome {
    let ps = pairs(15);
    for &p in &ps {
        let n = enumerate(p).count() as u64;
        ensure!(n == u64_of(&rational_catalan(p)), "{p}: {n} paths");
    }
    Ok(format!("{} pairs", ps.len()))
}

fn c3_refinements() -> Outcome {
    let ps = pairs(13);
    let mut classes = 0;
    for &p in &ps {
        let mut nar = vec![0u64; p.a() as usize + 1];
        let mut krew: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for d in enumerate(p) {
            let s = d.statistics();
            nar[s.nontrivial_runs as usize] += 1;
            *krew.entry(s.run_type.counts().to_vec()).or_default() += 1;
        }
        for i in 1..=p.a() {
            let n = u64_of(&narayana(p, i).unwrap());
            ensure!(nar[i as usize] == n, "{p}: Nar({i}) = {n}, census {}", nar[i as usize]);
        }
        for r in RunTypeVector::all(p) {
            let k = u64_of(&kreweras(p, &r).unwrap());
            let seen = krew.get(r.counts()).copied().unwrap_or(0);
            ensure!(seen == k, "{p}: Krew({:?}) = {k}, census {seen}", r.counts());
            classes += 1;
        }
    }
    Ok(format!("{} pairs, {classes} run types", ps.len()))
}

fn weak_compositions(parts: u32, total: u32) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|x| {
            weak_compositions(parts - 1, total - x).into_iter().map(move |mut rest| {
                rest.insert(0, x);
                rest
            })
        })
        .collect()
}

fn c4_cycle_lemma() -> Outcome {
    let mut words = 0;
    for p in pairs(10) {
        for letters in weak_compositions(p.b(), p.a()) {
            let w = RunWord::new(RunKind::Vertical, letters);
            let dyck: Vec<usize> = (0..p.b() as usize)
                .filter(|&k| DyckPath::validate(p, w.rotated(k).steps()).is_ok())
                .collect();
            ensure!(dyck.len() == 1, "{p}: {:?} has {} Dyck conjugates", w.letters, dyck.len());
            let (_, offset) = cycle_rectify(p, &w).map_err(|e| e.to_string())?;
            ensure!(offset == dyck[0], "{p}: rectify offset {offset} != {}", dyck[0]);
            words += 1;
        }
    }
    Ok(format!("{words} words"))
}

fn c5_ass_3_5() -> Outcome {
    let p = pair(3, 5);
    let d = |u, v| Diagonal::new(u, v, 6).unwrap();
    let set = |xs: &[(u32, u32)]| {
        let mut v: Vec<Diagonal> = xs.iter().map(|&(u, w)| d(u, w)).collect();
        v.sort();
        v
    };
    let facets = [
        set(&[(1, 3), (1, 5)]),
        set(&[(2, 4), (1, 5)]),
        set(&[(2, 4), (2, 6)]),
        set(&[(1, 3), (3, 5)]),
        set(&[(2, 6), (3, 5)]),
        set(&[(1, 3), (4, 6)]),
        set(&[(2, 4), (4, 6)]),
    ];
    let valleys = [
        set(&[]),
        set(&[(2, 4)]),
        set(&[(2, 6)]),
        set(&[(3, 5)]),
        set(&[(2, 6), (3, 5)]),
        set(&[(4, 6)]),
        set(&[(2, 4), (4, 6)]),
    ];
    let order = shelling_order(p).map_err(|e| e.to_string())?;
    ensure!(order.facets == facets, "facet order {:?}", order.facets);
    ensure!(order.valley_faces == valleys, "valley faces {:?}", order.valley_faces);
    let ass = build_ass(p).map_err(|e| e.to_string())?;
    let mut all: Vec<Vec<Diagonal>> = facets.to_vec();
    all.sort();
    ensure!(ass.facets() == all, "facet set {:?}", ass.facets());
    let h = ass.f_h_vectors().h;
    ensure!(h == [1, 4, 2], "h = {h:?}");
    let (x, y) = (d(1, 5), d(3, 5));
    let adm = admissible_set(p).map_err(|e| e.to_string())?;
    ensure!(adm.admits(x) && adm.admits(y), "(1,5),(3,5) not admissible");
    ensure!(noncrossing(x, y), "(1,5),(3,5) cross");
    ensure!(!ass.contains_face(&[x, y]), "{{(1,5),(3,5)}} is a face");
    Ok("7 facets, valley faces, h=(1,4,2)".into())
}

fn c6_shelling_identities() -> Outcome {
    let ps = pairs(12);
    for &p in &ps {
        let cert = certify_shelling(p).map_err(|e| format!("{p}: {e}"))?;
        let order = shelling_order(p).map_err(|e| e.to_string())?;
        ensure!(cert.minimal_faces == order.valley_faces, "{p}: minimal faces differ");
        let r = check_identities(p).map_err(|e| format!("{p}: {e}"))?;
        let cat1 = u64_of(&derived_catalan(p));
        for i in 1..=p.a() {
            ensure!(r.fh.f[i as usize - 1] == u64_of(&kirkman(p, i).unwrap()), "{p}: f_{}", i as i64 - 2);
            ensure!(r.fh.h[i as usize - 1] as u64 == u64_of(&narayana(p, i).unwrap()), "{p}: h_{}", i as i64 - 2);
        }
        ensure!(r.reduced_euler.unsigned_abs() == cat1, "{p}: |χ| = {}", r.reduced_euler);
        let top = p.a() as isize - 2;
        ensure!(r.betti.degree(top) as u64 == cat1, "{p}: top Betti {}", r.betti.degree(top));
        ensure!((-1..top).all(|k| r.betti.degree(k) == 0), "{p}: lower Betti nonzero");
    }
    Ok(format!("{} pairs", ps.len()))
}

fn c7_fuss_equality() -> Outcome {
    for (a, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        let p = pair(a, m * a + 1);
        let (x, y) = (build_ass(p).unwrap(), build_ass_hat(p).unwrap());
        ensure!(x.facets() == y.facets(), "{p}: Ass != Âss");
    }
    Ok("6 pairs".into())
}

fn c8_collapse() -> Outcome {
    match check_collapse_conjecture(pair(3, 5), DEFAULT_COLLAPSE_BUDGET) {
        Ok(Verdict::Verified(CollapseWitness::Sequence(s))) if s.len() == 2 => {}
        other => return Err(format!("(3,5): {other:?}")),
    }
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for p in pairs(11) {
        let v = check_collapse_conjecture(p, DEFAULT_COLLAPSE_BUDGET).map_err(|e| format!("{p}: {e}"))?;
        *tally.entry(v.status()).or_default() += 1;
    }
    Ok(format!("(3,5) in 2 collapses; probes a+b<=11: {tally:?}"))
}

fn c9_alexander() -> Outcome {
    let ps: Vec<CoprimePair> = pairs(15).into_iter().filter(|p| p.b() <= 8).collect();
    for &p in &ps {
        let r = check_alexander_duality(p).map_err(|e| e.to_string())?;
        ensure!(r.total_diagonals as u32 == (p.b() + 1) * (p.b() - 2) / 2, "{p}: diagonal count");
        if p.b() != 2 * p.a() {
            ensure!(r.vertices + r.dual_vertices == r.total_diagonals, "{p}: vertex partition");
        }
        // Index k holds degree k - 1; degree i pairs with b - 4 - i.
        let n = r.betti.len();
        ensure!((0..n).all(|k| r.betti[k] == r.dual_betti[n - 1 - k]), "{p}: pairing");
    }
    Ok(format!("{} pairs", ps.len()))
}

fn c10_promotion() -> Outcome {
    let ps = pairs(13);
    for &p in &ps {
        verify_promotion_rotation(p).map_err(|e| e.to_string())?;
    }
    let r = verify_promotion_rotation(pair(5, 8)).unwrap();
    for s in [3, 6, 12] {
        ensure!(r.orbit_sizes.contains(&s), "(5,8) has no orbit of size {s}");
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for s in r.orbit_sizes {
        *sizes.entry(s).or_default() += 1;
    }
    Ok(format!("{} pairs; (5,8) orbits {sizes:?}", ps.len()))
}

fn c11_csp() -> Outcome {
    let (mut fuss, mut other, mut refuted) = (0, 0, Vec::new());
    for p in pairs(13) {
        let r = csp_check(p).map_err(|e| e.to_string())?;
        if p.is_fuss() {
            ensure!(r.holds, "{p}: CSP fails on a Fuss pair");
            fuss += 1;
        } else if r.holds {
            other += 1;
        } else {
            refuted.push(p.to_string());
        }
    }
    Ok(format!("Fuss {fuss} hold; non-Fuss {other} verified, refuted {refuted:?}"))
}

fn c12_inhomogeneous_examples() -> Outcome {
    let p = pair(5, 8);
    let d = DyckPath::parse(p, "NNEENNEEENEEE").unwrap();
    let pi = inhomogeneous(&d).unwrap();
    ensure!(pi.to_string() == "{1,2,7 | 3,4,5 | 6}", "π = {pi}");
    let cover = SetPartition::new(7, vec![vec![1, 2, 6, 7], vec![3, 4, 5]]).unwrap();
    ensure!(pi.nc_covers().unwrap().contains(&cover), "{cover} does not cover {pi}");
    let e = DyckPath::parse(p, "NNNEENNEEEEEE").unwrap();
    let pe = inhomogeneous(&e).unwrap();
    ensure!(pe == cover, "π(N³E²N²E⁶) = {pe}");
    Ok(format!("{pi}; cover {cover}"))
}

fn c13_inhomogeneous_structure() -> Outcome {
    let ps: Vec<CoprimePair> = pairs(17).into_iter().filter(|p| p.b() <= 9).collect();
    for &p in &ps {
        let paths: Vec<DyckPath> = enumerate(p).collect();
        let parts: Vec<SetPartition> = paths.iter().map(|d| inhomogeneous(d).unwrap()).collect();
        let distinct: HashSet<&SetPartition> = parts.iter().collect();
        ensure!(distinct.len() == paths.len(), "{p}: not injective");
        for (d, pi) in paths.iter().zip(&parts) {
            ensure!(pi.blocks().len() as u32 == d.statistics().nontrivial_runs, "{p}: blocks of π({d})");
        }
        verify_order_filter(p).map_err(|e| e.to_string())?;
    }
    Ok(format!("{} pairs", ps.len()))
}

fn c14_specialisations() -> Outcome {
    for n in 1..=5u32 {
        let p = pair(n, n + 1);
        let mu: HashSet<SetPartition> = enumerate(p).map(|d| homogeneous(&d).unwrap()).collect();
        let matchings: HashSet<SetPartition> = SetPartition::all_noncrossing(2 * n)
            .into_iter()
            .filter(|q| q.blocks().iter().all(|b| b.len() == 2))
            .collect();
        ensure!(mu == matchings, "({n},{}) homogeneous images", n + 1);
        let pi: HashSet<SetPartition> = enumerate(p).map(|d| inhomogeneous(&d).unwrap()).collect();
        let nc: HashSet<SetPartition> = SetPartition::all_noncrossing(n).into_iter().collect();
        ensure!(pi == nc, "({n},{}) inhomogeneous images", n + 1);
    }
    for (n, k) in [(2u32, 2u32), (3, 2), (2, 3)] {
        let p = pair(n, k * n + 1);
        for d in enumerate(p) {
            let mu = homogeneous(&d).unwrap();
            ensure!(mu.blocks().iter().all(|b| b.len() as u32 == k + 1), "{p}: μ({d}) = {mu}");
            let pi = inhomogeneous(&d).unwrap();
            ensure!(pi.blocks().iter().all(|b| (b.len() as u32).is_multiple_of(k)), "{p}: π({d}) = {pi}");
        }
    }
    Ok("classical n<=5, Fuss (2,2),(3,2),(2,3)".into())
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ratcat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "{args:?} exited with {}", out.status);
    Ok(out.stdout)
}

fn c15_determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["enumerate", "--a", "5", "--b", "8", "inhomogeneous"],
        &["render", "dyck", "--a", "5", "--b", "8", "--path", "NNEENNEEENEEE", "--lasers", "all"],
        &["render", "dissection", "--a", "5", "--b", "8", "--path", "NNEENNEEENEEE"],
        &["render", "chords", "--a", "5", "--b", "8", "--path", "NNEENNEEENEEE"],
    ];
    for args in runs {
        let (x, y) = (run_bin(args)?, run_bin(args)?);
        ensure!(!x.is_empty() && x == y, "{args:?} differs between runs");
    }
    let lines = run_bin(runs[0])?.split(|&c| c == b'\n').filter(|l| !l.is_empty()).count();
    ensure!(lines == 99, "{lines} enumerate lines");
    Ok("enumerate and render byte-identical".into())
}

fn main() {
    // Printed lines are the report; silence the default panic message.
    panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, u64, fn() -> Outcome); 15] = [
        ("exact counts", 1, c1_exact_counts),
        ("enumeration vs formula", 30_000, c2_enumeration),
        ("Narayana and Kreweras refinements", 60_000, c3_refinements),
        ("cycle lemma", 60_000, c4_cycle_lemma),
        ("Ass(3,5) ground truth", 1_000, c5_ass_3_5),
        ("shelling and identities", 300_000, c6_shelling_identities),
        ("Fuss equality", 30_000, c7_fuss_equality),
        ("collapse conjecture instance", 120_000, c8_collapse),
        ("Alexander duality", 120_000, c9_alexander),
        ("promotion and rotation", 60_000, c10_promotion),
        ("cyclic sieving probe", 60_000, c11_csp),
        ("inhomogeneous ground truth", 1_000, c12_inhomogeneous_examples),
        ("inhomogeneous structure", 120_000, c13_inhomogeneous_structure),
        ("specialisations", 60_000, c14_specialisations),
        ("determinism", 1_000, c15_determinism),
    ];
    let mut failed = 0;
    for (k, (name, bound_ms, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let elapsed = start.elapsed();
        let bound = Duration::from_millis(*bound_ms);
        let (status, detail) = match result {
            Ok(d) if elapsed <= bound => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:?}, bound {bound:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} [{:>10.3?} / {bound:?}] {name}: {detail}", k + 1, elapsed);
    }
    println!("{} of 15 criteria passed", 15 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
