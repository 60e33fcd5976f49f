//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use moduli_cli::run;
use moduli_core::exactalg::{macaulay_rank, Gf2, Rational, RingElement};
use moduli_core::labels::{bit, full_mask};
use moduli_core::operads::{sweep, Identity};
use moduli_core::presentations::{
    boundary_partitions, keel_presentation, krasnov_presentation, BoundaryRing,
};
use moduli_core::{glue_label_maps, ComplexStableTree, Partition2, RealLabel, RealStableTree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?} (limit {limit:?})"))
}

/// Hilbert function against the Macaulay oracle in every degree up to the socle.
fn cross_check<F: moduli_core::exactalg::Field>(r: &BoundaryRing<F>) -> Result<Vec<usize>, String> {
    let top = r.flavor().socle_degree(r.points());
    let h = r.ring().hilbert_function(top).map_err(e)?;
    for d in 0..=top {
        let oracle = macaulay_rank(r.ring().presentation(), d).map_err(e)?;
        let listed = h.0.iter().find(|x| x.degree == d).map_or(0, |x| x.dimension);
        ensure(oracle == listed, || format!("degree {d}: hilbert {listed}, macaulay {oracle}"))?;
    }
    ensure(h.is_palindromic(), || format!("{:?} is not palindromic", h.dimensions()))?;
    Ok(h.dimensions())
}

fn keel4() -> Check {
    let start = Instant::now();
    let r = keel_presentation::<Rational>(4).map_err(e)?;
    let h = r.ring().hilbert_function(2).map_err(e)?;
    ensure(h.dimensions() == [1, 1], || format!("hilbert {:?}", h.dimensions()))?;
    let gens: Vec<RingElement<Rational>> =
        r.partitions().iter().map(|p| r.generator(p)).collect::<Result<_, _>>().map_err(e)?;
    ensure(gens.len() == 3, || format!("{} generators", gens.len()))?;
    let nf0 = r.ring().normal_form(&gens[0]).map_err(e)?;
    let wide = r.with_degree_bound(4);
    for (a, g) in gens.iter().enumerate() {
        ensure(r.ring().normal_form(g).map_err(e)? == nf0, || format!("generator {a} differs"))?;
        for h in &gens[a + 1..] {
            ensure(wide.ring().is_zero(&g.mul(h).map_err(e)?).map_err(e)?, || "nonzero product".into())?;
        }
    }
    Ok(format!("hilbert [1, 1], generators equal, products zero, {}", within(start, Duration::from_secs(1))?))
}

fn keel5() -> Check {
    let start = Instant::now();
    let r = keel_presentation::<Rational>(5).map_err(e)?;
    ensure(r.partitions().len() == 10, || format!("{} generators", r.partitions().len()))?;
    let h = cross_check(&r)?;
    ensure(h == [1, 5, 1], || format!("hilbert {h:?}"))?;
    Ok(format!("10 generators, hilbert {h:?} = macaulay, {}", within(start, Duration::from_secs(5))?))
}

fn keel6() -> Check {
    let start = Instant::now();
    let r = keel_presentation::<Rational>(6).map_err(e)?;
    let h = cross_check(&r)?;
    ensure(h.first() == Some(&1) && h.last() == Some(&1), || format!("hilbert {h:?}"))?;
    Ok(format!("hilbert {h:?} = macaulay, {}", within(start, Duration::from_secs(300))?))
}

fn krasnov() -> Check {
    let start = Instant::now();
    let r4 = krasnov_presentation(4).map_err(e)?;
    let h4 = cross_check(&r4)?;
    ensure(h4 == [1, 1], || format!("k=4 hilbert {h4:?}"))?;
    let r5 = krasnov_presentation(5).map_err(e)?;
    let h5 = cross_check(&r5)?;
    ensure(h5 == [1, 5, 1], || format!("k=5 hilbert {h5:?}"))?;
    let chi = r5.ring().hilbert_function(2).map_err(e)?.euler_characteristic();
    // a torus has chi 0 and each real blowup removes 1
    let expected = -3;
    ensure(chi == expected, || format!("euler characteristic {chi}, expected {expected}"))?;
    Ok(format!("k=4 {h4:?}, k=5 {h5:?}, chi {chi}, {}", within(start, Duration::from_secs(5))?))
}

fn omega() -> Check {
    let w = |r: &BoundaryRing<Gf2>, s: [usize; 4]| r.omega_class(s[0], s[1], s[2], s[3]).map_err(e);
    let r4 = krasnov_presentation(4).map_err(e)?;
    let forms: Vec<RingElement<Gf2>> = [[1, 2, 3, 4], [1, 3, 2, 4], [1, 4, 2, 3]]
        .into_iter()
        .map(|s| r4.ring().normal_form(&w(&r4, s)?).map_err(e))
        .collect::<Result<_, _>>()?;
    ensure(forms[0] == forms[1] && forms[1] == forms[2], || "k=4 forms differ".into())?;
    let mut checked = 0;
    for k in [5, 6] {
        let r = krasnov_presentation(k).map_err(e)?;
        let ring = r.ring();
        for a in 1..=k {
            for b in a + 1..=k {
                for c in b + 1..=k {
                    for d in c + 1..=k {
                        let x = w(&r, [a, b, c, d])?;
                        let y = w(&r, [a, c, b, d])?;
                        let z = w(&r, [a, d, b, c])?;
                        ensure(x.degree() == Some(1), || format!("ω{a}{b}{c}{d} degree {:?}", x.degree()))?;
                        ensure(!ring.is_zero(&x).map_err(e)?, || format!("k={k}: ω{a}{b}{c}{d} vanishes"))?;
                        ensure(ring.equal(&x, &y).map_err(e)? && ring.equal(&y, &z).map_err(e)?, || {
                            format!("k={k}: three ω{a}{b}{c}{d} forms differ")
                        })?;
                        for (u, v) in [(&x, &x), (&x, &y), (&y, &z)] {
                            ensure(ring.is_zero(&u.mul(v).map_err(e)?).map_err(e)?, || {
                                format!("k={k}: product of ω{a}{b}{c}{d} forms is nonzero")
                            })?;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("k=4 forms coincide; {checked} quadruples for k=5,6"))
}

fn axioms() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for id in Identity::ALL {
        let rep = sweep(id, 500, 0).map_err(e)?;
        let mut s = format!("{id}: {}/{} failed", rep.failures.len(), rep.samples);
        if rep.undefined > 0 {
            s.push_str(&format!(", {} undefined", rep.undefined));
        }
        if let Some(r) = rep.resolved_by_pair_block_swap {
            s.push_str(&format!(", {r} resolved by swapping pair blocks"));
        }
        if !rep.passed() {
            bad.push(s.clone());
        }
        parts.push(s);
    }
    let t = within(start, Duration::from_secs(120));
    let line = format!("{}; {}", parts.join("; "), t.clone().unwrap_or_else(|x| x));
    if bad.is_empty() && t.is_ok() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn figure_three() -> Check {
    let host = RealStableTree::one_vertex(0, 3).map_err(e)?;
    let guest = ComplexStableTree::one_vertex(4).map_err(e)?;
    let t = host.glue_conjugate(2, &guest).map_err(e)?;
    ensure((t.reals(), t.pairs()) == (0, 5), || format!("shape {:?}", (t.reals(), t.pairs())))?;
    let (labels, inv) = t.vertex_labels();
    ensure(labels.len() == 3, || format!("{} vertices", labels.len()))?;
    let sorted = |mut v: Vec<RealLabel>| {
        v.sort();
        v
    };
    use RealLabel::{Minus, Plus};
    let fixed: Vec<usize> = (0..3).filter(|&v| inv[v] == v).collect();
    ensure(fixed.len() == 1, || format!("{} fixed vertices", fixed.len()))?;
    ensure(sorted(labels[fixed[0]].clone()) == [Plus(1), Plus(5), Minus(1), Minus(5)], || {
        format!("fixed vertex carries {:?}", labels[fixed[0]])
    })?;
    let plus = (0..3)
        .find(|&v| inv[v] != v && labels[v].contains(&Plus(2)))
        .ok_or("2+ is not on a swapped vertex")?;
    ensure(sorted(labels[plus].clone()) == [Plus(2), Plus(3), Plus(4)], || format!("{:?}", labels[plus]))?;
    let minus = inv[plus];
    ensure(sorted(labels[minus].clone()) == [Minus(2), Minus(3), Minus(4)], || format!("{:?}", labels[minus]))?;
    Ok("pairs 1,5 on the fixed component; 2+,3+,4+ and 2-,3-,4- on the swapped copies".into())
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Result<ComplexStableTree, String> {
    let mut parts = if n >= 4 { boundary_partitions(n).map_err(e)? } else { Vec::new() };
    parts.shuffle(rng);
    let want = rng.random_range(0..=n.saturating_sub(3));
    let mut chosen: Vec<Partition2> = Vec::new();
    for p in parts {
        if chosen.len() == want {
            break;
        }
        if chosen.iter().all(|q| p.compatible(q).unwrap_or(false)) {
            chosen.push(p);
        }
    }
    ComplexStableTree::from_partitions(n, chosen).map_err(e)
}

fn strata_gluing() -> Check {
    let start = Instant::now();
    let rings: Vec<BoundaryRing<Rational>> =
        (0..=6).map(|n| keel_presentation(n.max(3))).collect::<Result<_, _>>().map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut edges = 0;
    for sample in 0..200 {
        // host with k inputs, guest with l inputs, k + l labels after gluing
        let total = rng.random_range(4..=6);
        let k = rng.random_range(2..=total - 2);
        let l = total - k;
        let i = rng.random_range(1..=k);
        let x = random_tree(&mut rng, k + 1)?;
        let y = random_tree(&mut rng, l + 1)?;
        let glued = x.glue(i, &y).map_err(e)?;
        let target = &rings[total];
        let (m1, m2) = glue_label_maps(k, l, i).map_err(e)?;
        let px = rings[k + 1].transport(&rings[k + 1].strata_class(&x).map_err(e)?, &m1, target).map_err(e)?;
        let py = rings[l + 1].transport(&rings[l + 1].strata_class(&y).map_err(e)?, &m2, target).map_err(e)?;
        let node = (i..i + l).fold(0, |s, a| s | bit(a));
        let edge = target
            .generator(&Partition2::from_masks(full_mask(total), node, true).map_err(e)?)
            .map_err(e)?;
        let product = px.mul(&py).map_err(e)?.mul(&edge).map_err(e)?;
        let class = target.strata_class(&glued).map_err(e)?;
        let (a, b) = (
            target.ring().normal_form(&class).map_err(e)?,
            target.ring().normal_form(&product).map_err(e)?,
        );
        ensure(a == b, || format!("sample {sample}: {a} vs {b}"))?;
        edges += glued.edge_count();
    }
    Ok(format!("200 gluings ({edges} edges in total), {}", within(start, Duration::from_secs(60))?))
}

fn refusals() -> Check {
    for args in [
        &["moduli", "torsion"][..],
        &["moduli", "torsion", "--space", "keel", "--n", "6"],
        &["moduli", "betti", "--space", "krasnov", "--n", "5", "--field", "q"],
        &["moduli", "betti", "--space", "rconj", "--n", "4"],
    ] {
        let out = run(args.iter().copied());
        ensure(out.code == 1 && out.stderr.contains("out of scope"), || {
            format!("{:?}: exit {} {:?}", &args[1..], out.code, out.stderr)
        })?;
    }
    Ok("torsion, 2-torsion and rational real rings refused as out of scope".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("keel ring, 4 points", keel4),
        ("keel ring, 5 points", keel5),
        ("keel ring, 6 points", keel6),
        ("krasnov rings, 4 and 5 points", krasnov),
        ("omega classes", omega),
        ("operad identities", axioms),
        ("pair gluing label placement", figure_three),
        ("strata classes under gluing", strata_gluing),
        ("out of scope refusals", refusals),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", n + 1);
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
