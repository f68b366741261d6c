//! One PASS/FAIL line per acceptance criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonorient::catalog::{mod_n31_u, mod_n31_v, SubgroupSpec};
use nonorient::freeaut::NontrivialityDetector;
use nonorient::homology::{find_assignment, isometries, n31_twist_classes, transvection, MatrixRefuter};
use nonorient::klein::{k_out, k_y_conjugacy_classes};
use nonorient::surface::{abelian_rank, max_chain, max_disjoint_system};
use nonorient::tietze::tietze_check;
use nonorient::verifier::{check_endomorphism, check_non_inner, extract_out_invariant, n31v_prover, phi, Overall};
use nonorient::*;

const BUDGET: usize = 100_000;

struct Line {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn c1() -> Result<Line> {
    let start = Instant::now();
    let mut orders = Vec::new();
    let mut all_klein = true;
    for bound in [2, 3, 4] {
        let t = k_out(bound)?;
        orders.push(t.order());
        all_klein &= t.is_klein_four();
    }
    let el = start.elapsed();
    Ok(check(
        all_klein && within(el, Duration::from_secs(1)),
        format!("Out orders for bounds 2,3,4 = {orders:?}, Klein four: {all_klein}, {el:.2?}"),
    ))
}

fn c2() -> Result<Line> {
    let reps = k_y_conjugacy_classes(3)?;
    let expected = [KleinElement::new(1, 0), KleinElement::new(1, 1), KleinElement::new(-1, 0), KleinElement::new(-1, 1)];
    let ok = reps.len() == 4 && expected.iter().all(|e| reps.contains(e));
    let shown: Vec<String> = reps.iter().map(|r| r.to_string()).collect();
    Ok(check(ok, format!("Y-class representatives {}", shown.join(" "))))
}

fn c3() -> Result<Line> {
    let start = Instant::now();
    let l = SubgroupSpec::twist_subgroup_l();
    let t = coset_enumerate(&l, 10_000)?;
    let el = start.elapsed();
    let ok = t.index == 2 && t.verify(&l.ambient.presentation, &l.generators) && within(el, Duration::from_secs(5));
    Ok(check(ok, format!("[Mod(N3,1) : L] = {} with {} cosets defined, {el:.2?}", t.index, t.defined)))
}

fn c4() -> Result<Line> {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut got = Vec::new();
    for g in 5..=13u32 {
        let (want, want_y) = if g % 2 == 1 { (g, g - 2) } else { (g - 1, g - 3) };
        let start = Instant::now();
        let free = max_chain(g, ChainConstraint::None)?.length;
        slowest = slowest.max(start.elapsed());
        let start = Instant::now();
        let y = max_chain(g, ChainConstraint::MustContainKleinBottlePiece)?.length;
        slowest = slowest.max(start.elapsed());
        ok &= free == want && y == want_y;
        got.push(format!("{g}:{free}/{y}"));
    }
    ok &= within(slowest, Duration::from_secs(30));
    Ok(check(ok, format!("G:max/Y-max {}; slowest search {slowest:.2?}", got.join(" "))))
}

fn c5() -> Result<Line> {
    let mut ok = true;
    let mut got = Vec::new();
    for g in 5..=12u32 {
        let rank = abelian_rank(g)?;
        ok &= rank == ((3 * g - g % 2) / 2 - 3) as usize;
        let d = max_disjoint_system(g)?;
        let piece = d.exceptional_piece();
        if g % 2 == 1 {
            ok &= d.count == ((3 * g - 7) / 2) as usize;
        } else {
            ok &= piece == Some(SurfaceType::orientable(0, 4));
        }
        got.push(format!("{g}:{rank}/{}/{}", d.count, piece.map(|p| p.to_string()).unwrap_or_default()));
    }
    Ok(check(ok, format!("G:rank/system/exceptional {}", got.join(" "))))
}

fn c6() -> Result<Line> {
    let start = Instant::now();
    let prover = n31v_prover()?;
    let p1 = phi(1);
    let p11 = p1.compose(&p1)?;
    let mut ok = true;
    let mut replayed = true;
    for spec in [&p1, &p11] {
        let chk = check_endomorphism(spec, &prover, BUDGET)?;
        ok &= chk.overall == Overall::Certified;
        for c in &chk.per_relator {
            if let Some(cert) = c.verdict.certificate() {
                replayed &= cert.certifies(&c.image, spec.presentation().relators());
            }
        }
    }
    let m1 = extract_out_invariant(&p1, &prover, BUDGET, 8)?;
    let m11 = extract_out_invariant(&p11, &prover, BUDGET, 8)?;
    let additive = m1.invariant().compose(&m1.invariant())? == m11.invariant();
    let el = start.elapsed();
    ok &= replayed && m1.m == 1 && m11.m == 2 && additive && within(el, Duration::from_secs(60));
    Ok(check(
        ok,
        format!("m(Phi1) = {}, m(Phi1∘Phi1) = {}, additive {additive}, replayed {replayed}, {el:.2?}", m1.m, m11.m),
    ))
}

fn c7() -> Result<Line> {
    let prover = n31v_prover()?;
    let e = mod_n31_v();
    let bad = EndomorphismSpec::from_named(e, &[("A1", "A1"), ("A3", "A3"), ("B", "B"), ("V", "A1 B V")])?;
    let chk = check_endomorphism(&bad, &prover, BUDGET)?;
    let by_matrix = chk
        .per_relator
        .iter()
        .filter(|c| matches!(c.verdict, ConsequenceVerdict::RefutedByMatrixRep(_)))
        .count();
    let ni = check_non_inner(&phi(1), &prover, BUDGET)?;
    let ok = chk.overall == Overall::Refuted && by_matrix > 0 && ni.non_inner;
    Ok(check(
        ok,
        format!("V -> A1 B V: {} ({by_matrix} relators matrix-refuted); Phi1 non-inner: {}", chk.overall.label(), ni.non_inner),
    ))
}

fn c8() -> Result<Line> {
    let start = Instant::now();
    let (u, v) = (mod_n31_u(), mod_n31_v());
    let (pu, pv) = (&u.presentation, &v.presentation);
    let fwd = GeneratorMap::from_named(pu, pv, &[("A1", "A1"), ("A3", "A3"), ("B", "B"), ("U", "A3^-1 V")])?;
    let bwd = GeneratorMap::from_named(pv, pu, &[("A1", "A1"), ("A3", "A3"), ("B", "B"), ("V", "A3 U")])?;
    let report = tietze_check(&Prover::new(pu), &Prover::new(pv), &fwd, &bwd, BUDGET)?;
    let el = start.elapsed();
    let unknown: Vec<&str> =
        report.items.iter().filter(|i| !i.verdict.is_certified()).map(|i| i.label.as_str()).collect();
    Ok(check(
        report.pass(),
        format!("{} sub-checks, not certified: {unknown:?}, {el:.2?}", report.items.len()),
    ))
}

fn random_word(rng: &mut ChaCha8Rng, rank: u16, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let codes: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=rank as i32);
            if rng.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    Word::from_codes(&codes)
}

fn c9() -> Result<Line> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let names = ["a", "b", "c"];
    let mut word_checks = 0;
    let mut word_ok = true;
    for _ in 0..10_000 {
        let (x, y, z) = (random_word(&mut rng, 3, 12), random_word(&mut rng, 3, 12), random_word(&mut rng, 3, 12));
        word_ok &= x.multiply(&y).multiply(&z) == x.multiply(&y.multiply(&z));
        word_ok &= x.multiply(&x.inverse()).is_identity();
        word_ok &= x.inverse().inverse() == x;
        word_ok &= x.multiply(&y).inverse() == y.inverse().multiply(&x.inverse());
        word_ok &= Word::parse(&x.display(&names).to_string(), &names).map(|w| w == x).unwrap_or(x.is_identity());
        word_ok &= x.pow(2).multiply(&x.pow(-3)) == x.inverse();
        word_checks += 1;
    }

    let mut tv_ok = true;
    let mut pairs = 0;
    for g in 1..=5usize {
        let classes: Vec<Mod2Class> = (1..1u32 << g)
            .map(|b| Mod2Class::new(g, b).unwrap())
            .filter(|c| !c.is_one_sided())
            .collect();
        for a in &classes {
            let ta = transvection(a)?;
            tv_ok &= ta.mul(&ta).is_identity() && ta.preserves_pairing();
            for b in &classes {
                let tb = transvection(b)?;
                tv_ok &= if a.pair(b) {
                    ta.mul(&tb).mul(&ta) == tb.mul(&ta).mul(&tb)
                } else {
                    ta.mul(&tb) == tb.mul(&ta)
                };
                pairs += 1;
            }
        }
    }
    tv_ok &= isometries(3).iter().all(|m| m.preserves_pairing() && m.is_invertible());

    let mut chi_ok = true;
    let mut witnesses = 0;
    for g in 3..=13u32 {
        let ambient = SurfaceType::nonorientable(g, 0);
        let mut ds = vec![max_chain(g, ChainConstraint::None)?.witness];
        ds.push(max_chain(g, ChainConstraint::MustContainKleinBottlePiece)?.witness);
        if g >= 5 {
            let s = max_disjoint_system(g)?;
            ds.push(s.witness);
            ds.push(s.max_witness);
        }
        for d in ds {
            chi_ok &= d.euler() == ambient.euler() && d.validate(&ambient).is_ok() && d.result()? == ambient;
            witnesses += 1;
        }
    }

    let e = mod_n31_v();
    let p = &e.presentation;
    let assignment = find_assignment(p, &n31_twist_classes(), 3)?.expect("assignment exists");
    let refuter = MatrixRefuter::new(assignment, p)?;
    let detector = NontrivialityDetector::new()?;
    let plain = Prover::new(p);
    let twist_relators: Vec<Word> = p.relators()[..3].to_vec();
    let mut sound = true;
    let mut certified = 0;
    for i in 0..200 {
        let twist_only = i % 2 == 0;
        let pool: &[Word] = if twist_only { &twist_relators } else { p.relators() };
        let rank = if twist_only { 3 } else { 4 };
        let mut w = Word::identity();
        for _ in 0..rng.gen_range(1..=2) {
            let r = &pool[rng.gen_range(0..pool.len())];
            let r = if rng.gen_bool(0.5) { r.inverse() } else { r.clone() };
            w = w.multiply(&r.conjugate(&random_word(&mut rng, rank, 2)));
        }
        let noise = random_word(&mut rng, rank, 2);
        let w = if i % 5 == 0 { w.multiply(&noise) } else { w };
        let verdict = plain.decide(&w, 2_000)?;
        if verdict.is_certified() {
            certified += 1;
            sound &= verdict.certificate().unwrap().certifies(&w, p.relators());
            sound &= !refuter.refutes(&w);
            if twist_only {
                sound &= !detector.detects(&w)?;
            }
        }
    }

    let ok = word_ok && tv_ok && chi_ok && sound && certified > 0;
    Ok(check(
        ok,
        format!(
            "{word_checks} word checks {word_ok}, {pairs} transvection pairs {tv_ok}, {witnesses} witnesses chi {chi_ok}, {certified} certified words sound {sound}"
        ),
    ))
}

fn c10() -> Result<Line> {
    let mut ok = true;
    let mut count = 0;
    for g in 1..=20u32 {
        for n in 0..=10u32 {
            let s = SurfaceType::nonorientable(g, n);
            let c = s.double_cover()?;
            ok &= c == SurfaceType::orientable(g - 1, 2 * n) && c.euler() == 2 * s.euler();
            count += 1;
        }
    }
    Ok(check(ok, format!("{count} surfaces N(g,n), g <= 20, n <= 10")))
}

type Criterion = (&'static str, fn() -> Result<Line>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Out(Mod(N2,1)) is Z2 x Z2, stable in the bound", c1),
        ("four Y-homeomorphism classes", c2),
        ("L has index 2", c3),
        ("longest maximal chains", c4),
        ("abelian rank and disjoint systems", c5),
        ("Phi1 and Phi1∘Phi1 certified with m = 1, 2", c6),
        ("V -> A1 B V refuted; Phi1 not inner", c7),
        ("U and V presentations are Tietze equivalent", c8),
        ("property suites", c9),
        ("orientation double covers", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f().unwrap_or_else(|e| check(false, format!("error: {e}")));
        if !line.ok {
            failed += 1;
        }
        println!("[{}] criterion {:>2}: {name}: {}", if line.ok { "PASS" } else { "FAIL" }, i + 1, line.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
