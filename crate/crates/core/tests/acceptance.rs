//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.
//! Runs without the libtest harness so the lines reach the terminal.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hoffman::relspace::{dspace_coef_spans, intersection_space};
use hoffman::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn random_word(rng: &mut StdRng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_bits(len, rng.gen_range(0..(1u64 << len)))
}

fn random_exponent(rng: &mut StdRng, s: usize, max_total: u32) -> MultiExponent {
    let mut exps = vec![0u32; s];
    for _ in 0..rng.gen_range(0..=max_total) {
        exps[rng.gen_range(0..s)] += 1;
    }
    MultiExponent::new(&exps)
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let mut n = rng.gen_range(-3i64..=3);
    if n == 0 {
        n = 1;
    }
    Rational::new(n, rng.gen_range(1..=3))
}

fn random_series(rng: &mut StdRng, t: Truncation, max_len: usize, terms: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(t);
    for _ in 0..terms {
        let p = NCPoly::monomial(random_rational(rng), random_word(rng, max_len));
        let a = random_exponent(rng, t.s, 1);
        out = &out + &TruncSeries::monomial(&p, a, t);
    }
    out
}

fn random_z_series(rng: &mut StdRng, t: Truncation) -> TruncSeries {
    let mut out = TruncSeries::zero(t);
    for _ in 0..rng.gen_range(1..=2) {
        let p = NCPoly::z()
            .pow(rng.gen_range(0..=2))
            .scale(&random_rational(rng));
        out = &out + &TruncSeries::monomial(&p, random_exponent(rng, t.s, 1), t);
    }
    out
}

fn c1_generator_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0031);
    let mut admissible = 0;
    for k in 0..200 {
        let s = rng.gen_range(1..=3);
        let t = Truncation::new(s, 8, 5);
        let spec = MapSpec::new((0..s).map(|_| rng.gen_range(-2..=2)).collect());
        let terms = rng.gen_range(1..=3);
        let a = random_series(&mut rng, t, 3, terms);
        let b = random_z_series(&mut rng, t);
        let g = d_generator(&a, &b, &spec).map_err(e)?;
        admissible += g.admissible as usize;
        let r = verify_eq31(&g.value, &spec).map_err(e)?;
        ensure(r.equal, || format!("generator {k} (spec {spec}): {r}"))?;
    }
    Ok(format!(
        "200 generators, {admissible} with coefficients in H^0"
    ))
}

fn c2_corollary_42() -> Outcome {
    let t = Truncation::new(3, 8, 6);
    let cases = [
        (Corollary::I, 1),
        (Corollary::I, 2),
        (Corollary::II, 1),
        (Corollary::II, 2),
        (Corollary::III, 1),
        (Corollary::IV, 1),
    ];
    for (c, d) in cases {
        let r = corollary_identity(c, d, t).map_err(e)?;
        ensure(r.equal, || r.to_string())?;
    }
    Ok("(i) d=1,2; (ii) d=1,2; (iii); (iv) at s=3 W=8 N=6".into())
}

fn c3_theorem_36() -> Outcome {
    let specs = [vec![1], vec![2], vec![1, -1]];
    let mut summary = Vec::new();
    for restrict in [false, true] {
        let direct: Vec<SubspaceBasis> = (0..=8).map(|w| intersection_space(w, restrict)).collect();
        for spec in &specs {
            let spec = MapSpec::new(spec.clone());
            let spans = dspace_coef_spans(8, &spec, restrict, 8).map_err(e)?;
            for w in 0..=8 {
                ensure(spans[w] == direct[w], || {
                    format!("w={w} spec {spec} restrict={restrict}: coef span dim {} vs intersection dim {}",
                        spans[w].dim(), direct[w].dim())
                })?;
            }
            let lower = dspace_coef_spans(8, &spec, restrict, 7).map_err(e)?;
            ensure(lower[8].dim() == spans[8].dim(), || {
                format!(
                    "spec {spec}: N=7 gives dim {} at w=8, N=8 gives {}",
                    lower[8].dim(),
                    spans[8].dim()
                )
            })?;
        }
        let dims: Vec<String> = direct[1..].iter().map(|s| s.dim().to_string()).collect();
        summary.push(format!(
            "{}: [{}]",
            if restrict { "H0" } else { "H" },
            dims.join(",")
        ));
        if restrict {
            ensure(direct[3].dim() == 1 && direct[4].dim() == 1, || {
                format!(
                    "restricted dims at w=3,4 are {}, {}",
                    direct[3].dim(),
                    direct[4].dim()
                )
            })?;
        }
    }
    Ok(format!("dims w=1..8 {}", summary.join("; ")))
}

fn c4_graded_kernels() -> Outcome {
    let t1 = Truncation::new(1, 8, 2);
    for n in 1..=3 {
        for w in 0..=8 {
            let k = graded_kernel(&KernelMap::Partial(n), w, t1).map_err(e)?;
            ensure(k == SubspaceBasis::z_power(w), || {
                format!("Ker d{n} at w={w}: {k}")
            })?;
        }
    }
    for w in 0..=6 {
        let k = graded_kernel(&KernelMap::DeltaMinusId(MapSpec::new(vec![1])), w, t1).map_err(e)?;
        ensure(k == SubspaceBasis::z_power(w), || {
            format!("Ker(Delta - id) at w={w}: {k}")
        })?;
    }
    let t2 = Truncation::new(2, 8, 2);
    let pairs = [(vec![1], vec![-1], t1), (vec![1, 0], vec![0, 1], t2)];
    for (a, b, t) in pairs {
        for w in 0..=6 {
            let r = pairwise_triviality(&MapSpec::new(a.clone()), &MapSpec::new(b.clone()), w, t)
                .map_err(e)?;
            ensure(r.equal, || r.to_string())?;
        }
    }
    Ok("Ker d_n (n<=3, w<=8), Ker(Delta-id) (w<=6), two spec pairs (w<=6) all span{z^w}".into())
}

fn xz_words(len: usize) -> impl Iterator<Item = Word> {
    (0..1u64 << len).map(move |b| Word::from_bits(len, b))
}

fn lw_of_partial(n: usize, w: Word) -> std::result::Result<Word, String> {
    let p = to_xy_basis(&NCPoly::from_terms(
        Alphabet::XZ,
        [(w, Rational::from_integer(1))],
    ));
    let d = partial_poly(n, &p, None).map_err(e)?;
    leading_word(&to_xz_basis(&d)).map_err(e)
}

fn c5_leading_words() -> Outcome {
    let x = Word::parse("x", Alphabet::XZ).unwrap();
    let z = Word::parse("z", Alphabet::XZ).unwrap();
    let mut checked = 0;
    for n in 1..=3 {
        let zn = Word::from_letters(&vec![z.at(0); n]);
        for len in 0..=6 {
            for w in xz_words(len) {
                let lw = lw_of_partial(n, x.concat(w))?;
                let want = x.concat(zn).concat(w);
                ensure(lw == want, || {
                    format!(
                        "LW(d{n}(x{})) = {}",
                        w.render(Alphabet::XZ),
                        lw.render(Alphabet::XZ)
                    )
                })?;
                checked += 1;
            }
        }
        let mut words: Vec<Word> = (1..=5)
            .flat_map(xz_words)
            .filter(|w| w.count(x.at(0)) > 0)
            .collect();
        words.sort_by(|a, b| a.lex_cmp(*b));
        let lws: Vec<Word> = words
            .iter()
            .map(|&w| lw_of_partial(n, w))
            .collect::<std::result::Result<_, _>>()?;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                ensure(lws[i].lex_cmp(lws[j]).is_lt(), || {
                    format!(
                        "d{n}: {} < {} but LW order fails",
                        words[i].render(Alphabet::XZ),
                        words[j].render(Alphabet::XZ)
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} leading-word comparisons"))
}

fn c6_corollary_44() -> Outcome {
    let mut count = 0;
    for m in 1..=5 {
        for n in 1..=6 - m {
            let r = membership_cor44(Cor44::I { d: 1, m, n }).map_err(e)?;
            ensure(r.equal, || r.to_string())?;
            count += 1;
        }
    }
    for k in 3..=8 {
        for r in 1..k {
            for m in 1..k - r {
                let rep = membership_cor44(Cor44::II { k, r, m }).map_err(e)?;
                ensure(rep.equal, || rep.to_string())?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} elements in the restricted derivation span"
    ))
}

fn c7_map_oracles() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0051);
    let t = Truncation::new(2, 6, 5);
    let mut words: Vec<Word> = vec![
        Word::parse("x", Alphabet::XY).unwrap(),
        Word::parse("y", Alphabet::XY).unwrap(),
    ];
    words.extend((0..50).map(|_| random_word(&mut rng, 6)));
    for w in &words {
        let v = TruncSeries::inject(&NCPoly::word(*w), t);
        for j in 1..=2 {
            for sign in [1, -1] {
                let a = delta_single(j, sign, &v).map_err(e)?;
                let b = delta_exp_oracle(j, sign, &v).map_err(e)?;
                ensure(a == b, || {
                    format!("Delta_u{j}^{sign} on {w}: closed form and exp differ")
                })?;
            }
        }
    }
    for _ in 0..30 {
        let v = random_series(&mut rng, t, 4, 3);
        for j in 1..=2 {
            let lhs = tau(&delta_single(j, -1, &tau(&v)).map_err(e)?);
            let rhs = delta_single(j, 1, &v).map_err(e)?;
            ensure(lhs == rhs, || format!("tau Delta^-1 tau != Delta on {v}"))?;
        }
        let a = delta_single(1, 1, &delta_single(2, 1, &v).map_err(e)?).map_err(e)?;
        let b = delta_single(2, 1, &delta_single(1, 1, &v).map_err(e)?).map_err(e)?;
        ensure(a == b, || {
            format!("Delta_u1 and Delta_u2 do not commute on {v}")
        })?;
    }
    Ok(format!(
        "{} words, 30 random series, s=2 W=6 N=5",
        words.len()
    ))
}

fn c8_numeric() -> Outcome {
    let cutoff = 100_000;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for w in 3..=7 {
        for p in intersection_space(w, true).basis() {
            let r = relation_residual(&p, cutoff).map_err(e)?;
            ensure(r.within_tail_bound(), || {
                format!(
                    "{}: partial-sum residual {} exceeds tail bound {:e}",
                    p.render(),
                    r.residual,
                    r.tail_bound
                )
            })?;
            ensure(r.limit_residual_f64() <= 1e-3, || {
                format!("{}: residual {}", p.render(), r.limit_residual)
            })?;
            worst = worst.max(r.limit_residual_f64());
            count += 1;
        }
    }
    for (a, b) in [("(3)", "(2,1)"), ("(4)", "(2,1,1)")] {
        let za = zeta_eval(&a.parse().map_err(e)?, cutoff).map_err(e)?;
        let zb = zeta_eval(&b.parse().map_err(e)?, cutoff).map_err(e)?;
        let diff = (&za.value - &zb.value).abs();
        let diff = bigdecimal::ToPrimitive::to_f64(&diff).unwrap_or(f64::INFINITY);
        ensure(diff <= za.tail_bound + zb.tail_bound, || {
            format!("zeta{a} - zeta{b} = {diff:e} exceeds combined tail bound")
        })?;
    }
    Ok(format!(
        "{count} relations, worst residual {worst:.1e}; duality pairs within tail bounds"
    ))
}

fn c9_appendix() -> Outcome {
    let t = Truncation::new(3, 8, 6);
    let mut count = 0;
    for r in 1..=5 {
        for d in 1..=2.min(r) {
            let rep = appendix_identity(AppendixIdentity::Kajikawa { r, d }, t).map_err(e)?;
            ensure(rep.equal, || rep.to_string())?;
            count += 1;
        }
    }
    let rep = appendix_identity(AppendixIdentity::Li, t).map_err(e)?;
    ensure(rep.equal, || rep.to_string())?;
    ensure(
        rep.checks.iter().any(|c| c.name.contains("u1") && c.equal),
        || "Li report lacks the u1 * LHS(iii) check".into(),
    )?;
    Ok(format!("{count} Kajikawa cases and Li at W=8"))
}

fn c10_strict_inclusion() -> Outcome {
    let table = dims_table(10, &[], true, None).map_err(e)?;
    println!("    weight dim_duality dim_intersection");
    for r in &table.rows {
        println!(
            "    {:>6} {:>11} {:>16}",
            r.weight, r.dim_duality, r.dim_intersection
        );
        ensure(r.dim_intersection <= r.dim_duality, || {
            format!("w={}: intersection larger", r.weight)
        })?;
    }
    Ok(match table.strict_inclusion_weight {
        Some(w) => format!("smallest weight with dim_intersection < dim_duality: {w}"),
        None => "no strict inclusion up to weight 10".into(),
    })
}

type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "generator suite", c1_generator_suite, 60),
        (2, "four explicit identities", c2_corollary_42, 120),
        (
            3,
            "coefficient span equals intersection",
            c3_theorem_36,
            600,
        ),
        (4, "graded kernels", c4_graded_kernels, 600),
        (5, "leading words", c5_leading_words, 600),
        (
            6,
            "duality families in the derivation span",
            c6_corollary_44,
            300,
        ),
        (7, "map oracles", c7_map_oracles, 600),
        (8, "numeric residuals", c8_numeric, 120),
        (9, "appendix equivalences", c9_appendix, 600),
        (10, "strict inclusion report", c10_strict_inclusion, 600),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, f, limit) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if !slow => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {limit} s")),
            Err(d) => (false, d),
        };
        failed += !ok as u32;
        println!(
            "{} criterion {id:>2} {name} ({:.2} s, limit {limit} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
