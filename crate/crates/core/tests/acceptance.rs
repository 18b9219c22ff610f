//! Acceptance gate. Each test prints one `PASS`/`FAIL` line for its
//! criterion and then asserts it. Time limits are pinned below.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weighted_ehrhart::algebra::interp::fmt_poly;
use weighted_ehrhart::algebra::{int, rat, FracPoly, Rat};
use weighted_ehrhart::cli::input::read_input;
use weighted_ehrhart::fan::StackyFan;
use weighted_ehrhart::fuzz::{random_complete_instance, random_polytope, Instance};
use weighted_ehrhart::polytope::{ehrhart, LatticePolytope};
use weighted_ehrhart::reciprocity::{
    group_betti_to_delta, hibi_check, orbifold_betti, pyramid_delta, verify_ehrhart_reciprocity,
    verify_grouping, verify_low_coefficients, verify_planar_closed_forms,
    verify_polytope_reciprocity, verify_weighted_reciprocity, ClassData, Triangulation,
};
use weighted_ehrhart::weighted::checks::{verify_symmetry, verify_weighted_h_duality};
use weighted_ehrhart::weighted::{delta0_local, delta_by_class, weighted_delta, LambdaFunction};
use weighted_ehrhart::{Error, Result};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const FUZZ_SEED: u64 = 0x00c0_ffee;
const N_PLANAR: usize = 50;
const N_SPATIAL: usize = 20;

fn report(criterion: &str, outcome: Result<String>) {
    match &outcome {
        Ok(detail) => println!("PASS {criterion}: {detail}"),
        Err(e) => println!("FAIL {criterion}: {e}"),
    }
    if let Err(e) = outcome {
        panic!("{criterion}: {e}");
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(what()))
    }
}

fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(name: &str) -> weighted_ehrhart::cli::input::Input {
    read_input(&data_file(name), None).unwrap()
}

fn class_table(data: &ClassData) -> BTreeMap<Rat, String> {
    data.classes
        .iter()
        .map(|(k, f)| (k.clone(), f.to_poly_string()))
        .collect()
}

fn counted_delta0(fan: &StackyFan, data: &ClassData) -> Result<FracPoly> {
    let (classes, _) = delta_by_class(fan, &data.table, &LambdaFunction::zero(fan.rays().len()))?;
    Ok(classes.iter().fold(FracPoly::zero(), |acc, (k, p)| &acc + &p.shift(k)))
}

struct Fuzzed {
    instance: Instance,
    data: ClassData,
}

struct Corpus {
    items: Vec<Fuzzed>,
    build_time: Duration,
}

/// Half of each dimension uses multipliers read off the polytope, half
/// uses random multipliers in {1, 2, 3}.
fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
        let mut items = Vec::new();
        for (d, n) in [(2, N_PLANAR), (3, N_SPATIAL)] {
            for i in 0..n {
                let instance = random_complete_instance(&mut rng, d, i % 2 == 1);
                let data = ClassData::new(&instance.fan, 2 * d + 2)
                    .unwrap_or_else(|e| panic!("instance {i} in dimension {d}: {e}"));
                items.push(Fuzzed { instance, data });
            }
        }
        Corpus {
            items,
            build_time: start.elapsed(),
        }
    })
}

fn over_corpus(mut f: impl FnMut(&Fuzzed) -> Result<()>) -> Result<usize> {
    for (i, item) in corpus().items.iter().enumerate() {
        f(item).map_err(|e| {
            Error::CheckFailed(format!(
                "instance {i} (rays {:?}): {e}",
                item.instance.fan.rays().iter().map(|r| r.b.clone()).collect::<Vec<_>>()
            ))
        })?;
    }
    Ok(corpus().items.len())
}

#[test]
fn criterion_01_hexagon_golden() {
    let start = Instant::now();
    let outcome = (|| {
        let input = load("hexagon.json");
        let p = input.polytope.as_ref().unwrap();
        let fan = &input.fan;
        let e = ehrhart(p, 6)?;
        check(FracPoly::from_coeffs(e.delta.clone()) == FracPoly::from_coeffs([1, 7, 4]), || {
            format!("delta_P = {:?}", e.delta)
        })?;
        check(fmt_poly(&e.polynomial, "m") == "6*m^2 + 3*m + 1", || {
            format!("f_P = {}", fmt_poly(&e.polynomial, "m"))
        })?;
        let golden = "1 + 2*t^(1/2) + t^(2/3) + 4*t + t^(4/3) + 2*t^(3/2) + t^2";
        let w = weighted_delta(fan, &LambdaFunction::zero(6), 6)?;
        check(w.specialized.to_string() == golden, || format!("counted {}", w.specialized))?;
        check(delta0_local(fan).to_string() == golden, || "local delta0".into())?;
        let data = ClassData::new(fan, 6)?;
        let want: BTreeMap<Rat, String> = [
            (int(0), "3*m^2 + 3*m + 1"),
            (rat(-1, 2), "2*m^2"),
            (rat(-1, 3), "1/2*m^2 + 1/2*m"),
            (rat(-2, 3), "1/2*m^2 - 1/2*m"),
        ]
        .into_iter()
        .map(|(k, s)| (k, s.to_string()))
        .collect();
        check(class_table(&data) == want, || format!("{:?}", class_table(&data)))?;
        let elapsed = start.elapsed();
        check(elapsed < GOLDEN_LIMIT, || format!("took {elapsed:?}"))?;
        Ok(format!("exact, {elapsed:?}"))
    })();
    report("1 hexagon golden", outcome);
}

#[test]
fn criterion_02_second_example_golden() {
    let start = Instant::now();
    let outcome = (|| {
        let golden = "1 + 3*t^(1/2) + t^(3/4) + 8*t + t^(5/4) + 3*t^(3/2) + t^2";
        let want: BTreeMap<Rat, String> = [
            (int(0), "5*m^2 + 5*m + 1"),
            (rat(-1, 2), "3*m^2"),
            (rat(-1, 4), "1/2*m^2 + 1/2*m"),
            (rat(-3, 4), "1/2*m^2 - 1/2*m"),
        ]
        .into_iter()
        .map(|(k, s)| (k, s.to_string()))
        .collect();
        for name in ["second_example_fan.json", "second_example_coarse.json"] {
            let fan = load(name).fan;
            let n = fan.rays().len();
            let w = weighted_delta(&fan, &LambdaFunction::zero(n), 6)?;
            check(w.specialized.to_string() == golden, || format!("{name}: {}", w.specialized))?;
            check(delta0_local(&fan).to_string() == golden, || format!("{name}: local"))?;
            let data = ClassData::new(&fan, 6)?;
            check(data.delta_q() == FracPoly::from_coeffs([1, 12, 5]), || {
                format!("{name}: delta_Q = {}", data.delta_q())
            })?;
            let f_q = fmt_poly(&data.ehrhart.polynomial, "m");
            check(f_q == "9*m^2 + 5*m + 1", || format!("{name}: f_Q = {f_q}"))?;
            check(class_table(&data) == want, || format!("{name}: {:?}", class_table(&data)))?;
        }
        let elapsed = start.elapsed();
        check(elapsed < GOLDEN_LIMIT, || format!("took {elapsed:?}"))?;
        Ok(format!("fine and coarse fans exact, {elapsed:?}"))
    })();
    report("2 second example golden", outcome);
}

#[test]
fn criterion_03_oracle_equivalence() {
    let start = Instant::now();
    let outcome = (|| {
        let c = corpus();
        let mut random_a = 0;
        let n = over_corpus(|f| {
            random_a += usize::from(f.instance.random_multipliers);
            let counted = counted_delta0(&f.instance.fan, &f.data)?;
            let local = delta0_local(&f.instance.fan);
            check(counted == local, || format!("counted {counted} vs local {local}"))
        })?;
        let elapsed = c.build_time.max(start.elapsed());
        check(elapsed < ORACLE_LIMIT, || format!("took {elapsed:?}"))?;
        Ok(format!(
            "{n} fans ({N_PLANAR} in d=2, {N_SPATIAL} in d=3, {random_a} with random a_i), counting {:?}",
            c.build_time
        ))
    })();
    report("3 oracle equivalence", outcome);
}

#[test]
fn criterion_04_reciprocity() {
    let outcome = (|| {
        let n = over_corpus(|f| {
            verify_weighted_reciprocity(&f.instance.fan, &f.data, 5)?;
            verify_ehrhart_reciprocity(&f.instance.fan, &f.data, 3)?;
            verify_polytope_reciprocity(&f.instance.polytope, 3)?;
            Ok(())
        })?;
        Ok(format!("{n} fans, weighted m = 1..5, classical m = 1..3"))
    })();
    report("4 reciprocity", outcome);
}

fn random_lambda(rng: &mut ChaCha8Rng, n: usize) -> LambdaFunction {
    let choices = [rat(-1, 2), int(0), rat(1, 3), int(1)];
    LambdaFunction::new((0..n).map(|_| choices[rng.gen_range(0..4)].clone()).collect())
}

#[test]
fn criterion_05_symmetry() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 5);
        let mut evaluations = 0;
        let n = over_corpus(|f| {
            let fan = &f.instance.fan;
            let d = int(fan.rank() as i64);
            let counted = counted_delta0(fan, &f.data)?;
            check(counted.is_palindromic(&d), || format!("delta0 = {counted}"))?;
            let zero = LambdaFunction::zero(fan.rays().len());
            let lambda = random_lambda(&mut rng, fan.rays().len());
            for l in [&zero, &lambda] {
                if l.is_zero() {
                    // the rational-function route, independent of the counts
                    let rf = weighted_ehrhart::weighted::delta_lambda_local(fan, l)?;
                    check(rf == rf.reverse(&d), || "lambda = 0 rational function".into())?;
                } else {
                    verify_symmetry(fan, l, 2 * fan.rank() + 2)?;
                }
            }
            Ok(())
        })?;
        // the evaluation identity is checked on the planar instances and
        // the first five spatial ones, 20 points per interior cone
        for f in corpus().items.iter().filter(|f| f.instance.fan.rank() == 2).chain(
            corpus().items.iter().filter(|f| f.instance.fan.rank() == 3).take(5),
        ) {
            let fan = &f.instance.fan;
            let lambda = random_lambda(&mut rng, fan.rays().len());
            let msg = verify_weighted_h_duality(fan, &lambda, 20, FUZZ_SEED)?;
            evaluations += msg.split_whitespace().next().unwrap().parse::<usize>().unwrap();
        }
        Ok(format!("{n} fans, lambda = 0 and random lambda; {evaluations} point evaluations"))
    })();
    report("5 symmetry", outcome);
}

#[test]
fn criterion_06_low_coefficients() {
    let outcome = (|| {
        let n = over_corpus(|f| {
            verify_low_coefficients(&f.instance.fan)?;
            if f.instance.random_multipliers {
                // Q is then not the polytope the fan came from
                return Ok(());
            }
            let vol = f.instance.polytope.normalized_volume();
            let at_one = delta0_local(&f.instance.fan).sum_coeffs();
            check(at_one == int(vol), || {
                format!("delta0(1) = {at_one} but the triangulated volume is {vol}")
            })
        })?;
        Ok(format!("{n} fans"))
    })();
    report("6 low coefficients", outcome);
}

#[test]
fn criterion_07_palindromy_criterion() {
    let outcome = (|| {
        let mut palindromic = 0;
        let n = over_corpus(|f| {
            palindromic += usize::from(hibi_check(&f.instance.fan, &f.data)?.palindromic);
            Ok(())
        })?;
        let square = load("reflexive_square.json").fan;
        let r = hibi_check(&square, &ClassData::new(&square, 6)?)?;
        check(r.palindromic && r.psi_piecewise_linear, || format!("square {r:?}"))?;
        let hex = load("hexagon.json").fan;
        let r = hibi_check(&hex, &ClassData::new(&hex, 6)?)?;
        check(!r.palindromic && !r.psi_piecewise_linear, || format!("hexagon {r:?}"))?;
        Ok(format!("{n} fans ({palindromic} palindromic) and both witnesses"))
    })();
    report("7 palindromy criterion", outcome);
}

#[test]
fn criterion_08_betti_grouping() {
    let outcome = (|| {
        let n = over_corpus(|f| {
            verify_grouping(&f.instance.fan, &f.data)?;
            if f.instance.random_multipliers {
                return Ok(());
            }
            let grouped = group_betti_to_delta(&orbifold_betti(&f.instance.fan));
            let direct = ehrhart(&f.instance.polytope, 2 * f.instance.fan.rank() + 2)?.delta;
            let mut direct = direct;
            direct.resize(grouped.len(), 0.into());
            check(grouped == direct, || format!("{grouped:?} vs delta_P {direct:?}"))
        })?;
        Ok(format!("{n} fans"))
    })();
    report("8 betti grouping", outcome);
}

/// A polytope with a lattice point that is not a vertex, so that refining
/// at every lattice point gives a second triangulation.
fn pyramid_polytope(rng: &mut ChaCha8Rng) -> LatticePolytope {
    loop {
        let p = random_polytope(rng, 2, 3, false);
        if p.lattice_points(1).len() > p.vertices().len() {
            return p;
        }
    }
}

#[test]
fn criterion_09_pyramid() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 9);
        let mut unimodular = 0;
        for i in 0..10 {
            let p = pyramid_polytope(&mut rng);
            let t1 = Triangulation::pulling(&p);
            let t2 = t1.clone().refine_at_lattice_points(&p);
            check(t1.simplices != t2.simplices, || format!("polytope {i}: one triangulation"))?;
            let want = FracPoly::from_coeffs(ehrhart(&p, 6)?.delta);
            for t in [&t1, &t2] {
                let got = pyramid_delta(&p, t)?;
                check(got == want, || format!("polytope {i}: {got} vs {want}"))?;
                if t.is_unimodular() {
                    unimodular += 1;
                    check(t.h_vector() == want, || {
                        format!("polytope {i}: h-vector {} vs {want}", t.h_vector())
                    })?;
                }
            }
        }
        Ok(format!("10 polytopes x 2 triangulations, {unimodular} unimodular"))
    })();
    report("9 pyramid", outcome);
}

#[test]
fn criterion_10_planar_closed_forms() {
    let outcome = (|| {
        let mut n = 0;
        over_corpus(|f| {
            if f.instance.fan.rank() == 2 {
                n += 1;
                verify_planar_closed_forms(&f.instance.fan, &f.data)?;
            }
            Ok(())
        })?;
        Ok(format!("{n} planar fans"))
    })();
    report("10 planar closed forms", outcome);
}
