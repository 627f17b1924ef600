//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers. Criteria 1, 2, and 10 drive the installed binary;
//! the theorem suites exercise the library directly.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use csstk::bits::BitMatrix;
use csstk::rng::SplitMix64;
use csstk::{
    base_square, block_rotation_closure, csst_definitional_check, expand_base, is_csst_pair,
    max_csst_partner, puncture_pair, quantum_params, star_compatibility_check, BaseMatrix,
    DefinitionalLimits, LinearCode, MinWeight, OracleVerdict, ShiftExponent,
};

const EX1_BASE: &str = "3,1,2,1;3,3,2,3";

const EX1_G1: &str = "\
1000001000010010
0100000110000001
0010001001000010
0001000100100001
0000101000001010
0000010100000101
";

const EX2_G1: &str = "\
1111111111111111
1111111100000000
1111000011110000
1100110011001100
1010101010101010
";

const EX2_G2: &str = "\
1111111100000000
1111000011110000
1100110011001100
1010101010101010
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_csstk"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("csstk-acceptance-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.next_u64() & 1 == 1 {
                m.set(r, c, true);
            }
        }
    }
    m
}

fn random_subcode(rng: &mut SplitMix64, code: &LinearCode) -> LinearCode {
    if code.k() == 0 {
        return code.clone();
    }
    let picks = 1 + (rng.next_u64() as usize) % code.k();
    let stride = code.generator().row(0).len();
    let mut rows = BitMatrix::zeros(0, code.n());
    for _ in 0..picks {
        let mut word = vec![0u64; stride];
        for r in 0..code.k() {
            if rng.next_u64() & 1 == 1 {
                code.generator().xor_row_into(r, &mut word);
            }
        }
        rows.push_row_words(&word);
    }
    LinearCode::from_generator(&rows)
}

fn random_exponents(rng: &mut SplitMix64, l: usize, n: usize) -> Vec<ShiftExponent> {
    (0..n)
        .map(|_| {
            if rng.next_f64() < 0.3 {
                ShiftExponent::Infinity
            } else {
                ShiftExponent::Finite(rng.next_below(l as u64) as usize)
            }
        })
        .collect()
}

#[test]
fn criterion_01_example1_reproduction() {
    let start = Instant::now();

    let h_path = std::env::temp_dir().join(format!("csstk-acc1-{}.txt", std::process::id()));
    run_ok(bin()
        .args(["construct", "--L", "4", "--base", EX1_BASE, "-o"])
        .arg(&h_path));
    let out = run_ok(bin().arg("csst").arg(&h_path).args(["--max-partner"]));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");

    // C1 = [16, 6, 4], equal to the printed generator's row space.
    let h = BitMatrix::parse_text(&std::fs::read_to_string(&h_path).unwrap()).unwrap();
    let c1 = LinearCode::from_generator(&h);
    let printed = LinearCode::from_generator(&BitMatrix::parse_text(EX1_G1).unwrap());
    assert_eq!((c1.n(), c1.k()), (16, 6));
    assert_eq!(c1, printed);
    assert_eq!(c1.min_weight(1 << 16).unwrap(), MinWeight::Exact(4));

    // C2 = C1: the reported partner generator is exactly the canonical G1.
    assert_eq!(json["partner"]["k"], 6);
    let partner_rows: Vec<String> = json["partner"]["gen"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(partner_rows.join("\n") + "\n", c1.generator().to_text());

    // C2^⊥ = [16, 10, 2] and quantum parameters [[16, 0, ≥2]].
    let dual = c1.dual();
    assert_eq!((dual.n(), dual.k()), (16, 10));
    assert_eq!(dual.min_weight(1 << 16).unwrap(), MinWeight::Exact(2));
    assert_eq!(json["is_pair"], true);
    assert_eq!(json["params"]["n"], 16);
    assert_eq!(json["params"]["k"], 0);
    assert_eq!(json["params"]["d_lower"], 2);
    assert_eq!(json["params"]["d_exact"], true);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    std::fs::remove_file(&h_path).ok();
    println!(
        "PASS criterion 1: example 1 reproduced, C1=[16,6,4], C2=C1, C2_dual=[16,10,2], \
         [[16,0,>=2]] in {elapsed:?}"
    );
}

#[test]
fn criterion_02_example2_reproduction() {
    let start = Instant::now();

    let g1 = tmp_file("ex2-g1.txt", EX2_G1);
    let g2 = tmp_file("ex2-g2.txt", EX2_G2);
    let out = run_ok(bin()
        .arg("csst")
        .arg(&g1)
        .arg(&g2)
        .arg("--puncture-degenerate"));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");

    assert_eq!(json["is_pair"], true);

    // C2 is degenerated on exactly the last coordinate.
    let c2 = LinearCode::from_generator(&BitMatrix::parse_text(EX2_G2).unwrap());
    assert_eq!(c2.zero_coordinates(), vec![15]);
    assert_eq!(json["punctured"]["removed"], serde_json::json!([15]));

    // The punctured pair is CSS-T with parameters [[15, 1, 3]].
    assert_eq!(json["punctured"]["is_pair"], true);
    assert_eq!(json["punctured"]["params"]["n"], 15);
    assert_eq!(json["punctured"]["params"]["k"], 1);
    assert_eq!(json["punctured"]["params"]["d_lower"], 3);
    assert_eq!(json["punctured"]["params"]["d_exact"], true);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    std::fs::remove_file(&g1).ok();
    std::fs::remove_file(&g2).ok();
    println!(
        "PASS criterion 2: example 2 verified, degenerate coordinate 15, punctured pair \
         [[15,1,3]] in {elapsed:?}"
    );
}

#[test]
fn criterion_03_condition_equivalence_suite() {
    let mut rng = SplitMix64::new(0x7E02);
    let trials = 10_000;
    let mut true_pairs = 0u32;
    for t in 0..trials {
        let n = 2 + (rng.next_u64() as usize) % 19;
        let k1 = 1 + (rng.next_u64() as usize) % 6;
        let c1 = LinearCode::from_generator(&random_matrix(&mut rng, k1, n));
        let c2 = match t % 3 {
            // Unrelated random code: almost always fails.
            0 => {
                let k2 = 1 + (rng.next_u64() as usize) % 5;
                LinearCode::from_generator(&random_matrix(&mut rng, k2, n))
            }
            // Subcode of C1: fails unless also square-orthogonal.
            1 => random_subcode(&mut rng, &c1),
            // Subcode of the maximal partner: always passes.
            _ => random_subcode(&mut rng, &max_csst_partner(&c1)),
        };
        let report = is_csst_pair(&c1, &c2, 2).unwrap();
        // is_csst_pair also asserts internally; this records the agreement.
        assert_eq!(report.cond2, report.cond3, "trial {t}");
        assert_eq!(report.cond3, report.hull_cond, "trial {t}");
        if report.is_pair {
            assert!(report.c2_self_orthogonal, "verified C2 must be self-orthogonal");
            true_pairs += 1;
        }
    }
    assert!(true_pairs > 100, "suite should exercise both outcomes");
    println!(
        "PASS criterion 3: conditions (2), (3), and the hull form agree on {trials} random \
         pairs ({true_pairs} verified true)"
    );
}

#[test]
fn criterion_04_hull_intersection_suite() {
    let mut rng = SplitMix64::new(0x7E04);
    let trials = 1_000;
    for _ in 0..trials {
        let n = 2 + (rng.next_u64() as usize) % 19;
        let k = 1 + (rng.next_u64() as usize) % 7;
        let c = LinearCode::from_generator(&random_matrix(&mut rng, k, n));
        let square = c.schur_square();
        let left = c.relative_hull(&square).unwrap();
        let right = c.hull().intersect(&square.hull()).unwrap();
        assert_eq!(left, right, "C ∩ (C²)^⊥ != hull(C) ∩ hull(C²)");
    }
    println!(
        "PASS criterion 4: C ∩ (C²)^⊥ = hull(C) ∩ hull(C²) on {trials} random codes"
    );
}

#[test]
fn criterion_05_square_preserves_quasi_cyclicity() {
    // Random quasi-cyclic codes constructed via expand_base: the raw
    // expansion is not closed under the length-L shift of the whole word,
    // so the base is first closed under block rotation; the premise is then
    // asserted, not assumed.
    let mut rng = SplitMix64::new(0x7E05);
    let trials = 500;
    for t in 0..trials {
        let l = 2 + (rng.next_u64() as usize) % 7;
        let m = 1 + (rng.next_u64() as usize) % 2;
        let n = 1 + (rng.next_u64() as usize) % 5;
        let mut entries = Vec::with_capacity(m * n);
        for _ in 0..m * n {
            entries.push(if rng.next_f64() < 0.3 {
                ShiftExponent::Infinity
            } else {
                ShiftExponent::Finite(rng.next_below(l as u64) as usize)
            });
        }
        let base = block_rotation_closure(&BaseMatrix::new(l, m, n, entries).unwrap());
        let code = LinearCode::from_generator(&expand_base(&base));
        assert!(code.is_quasi_cyclic(l), "premise failed at trial {t}");
        assert!(
            code.schur_square().is_quasi_cyclic(l),
            "square lost quasi-cyclicity at trial {t}"
        );
    }
    println!(
        "PASS criterion 5: schur_square preserved quasi-cyclicity (shift L) on {trials} \
         expand_base codes"
    );
}

#[test]
fn criterion_06_r_vector_star_fuzz() {
    let mut rng = SplitMix64::new(0x7E06);
    let trials = 10_000;
    for t in 0..trials {
        let l = 2 + (rng.next_u64() as usize) % 7; // L ≤ 8
        let n = 1 + (rng.next_u64() as usize) % 6;
        let a = random_exponents(&mut rng, l, n);
        let b = random_exponents(&mut rng, l, n);
        assert!(
            star_compatibility_check(l, &a, &b),
            "R(a)⋆R(b) != R(a∗b) at trial {t}: a={a:?} b={b:?} L={l}"
        );
    }
    println!("PASS criterion 6: R(a)⋆R(b) = R(a∗b) on {trials} fuzzed instances");
}

#[test]
fn criterion_07_base_square_span_suite() {
    let mut rng = SplitMix64::new(0x7E07);
    let trials = 200;
    for t in 0..trials {
        let l = 2 + (rng.next_u64() as usize) % 7; // L ≤ 8
        let m = 1 + (rng.next_u64() as usize) % 3;
        let n = 1 + (rng.next_u64() as usize) % 6;
        let entries = random_exponents(&mut rng, l, m * n);
        let base = BaseMatrix::new(l, m, n, entries).unwrap();
        let code = LinearCode::from_generator(&expand_base(&base));
        let squared = LinearCode::from_generator(&expand_base(&base_square(&base)));
        assert_eq!(
            squared,
            code.schur_square(),
            "span mismatch at trial {t} for base {base}"
        );
    }
    println!(
        "PASS criterion 7: expand_base(base_square(B)) spans the Schur square on {trials} \
         random bases"
    );
}

#[test]
fn criterion_08_puncture_theorem_suite() {
    let mut rng = SplitMix64::new(0x7E08);
    let target = 500;
    let mut done = 0;
    let mut attempts = 0;
    while done < target {
        attempts += 1;
        assert!(attempts < 40 * target, "generation stalled");
        let n = 6 + (rng.next_u64() as usize) % 13;
        let rows = 1 + (rng.next_u64() as usize) % 5;
        let mut gen = random_matrix(&mut rng, rows, n);
        for _ in 0..1 + (rng.next_u64() as usize) % 3 {
            let col = (rng.next_u64() as usize) % n;
            for r in 0..gen.rows() {
                gen.set(r, col, false);
            }
        }
        let c1 = LinearCode::from_generator(&gen);
        let c2 = random_subcode(&mut rng, &max_csst_partner(&c1));
        if c2.k() == 0 {
            continue;
        }
        let coords = c2.zero_coordinates();
        if coords.is_empty() || coords.len() == n {
            continue;
        }
        let (p1, p2) = puncture_pair(&c1, &c2, &coords).unwrap();
        let report = is_csst_pair(&p1, &p2, 2).unwrap();
        assert!(
            report.is_pair,
            "support-complement puncturing broke the pair (n={n}, coords={coords:?})"
        );
        done += 1;
    }
    println!(
        "PASS criterion 8: {target} support-complement puncturings re-verified as CSS-T \
         ({attempts} candidates generated)"
    );
}

#[test]
fn criterion_09_definitional_oracle_agreement() {
    let mut rng = SplitMix64::new(0x7E09);
    let limits = DefinitionalLimits::default();
    let target = 100;
    let mut conclusive = 0;
    let mut agree_true = 0;
    let mut agree_false = 0;
    let mut attempts = 0;
    while conclusive < target {
        attempts += 1;
        assert!(attempts < 100 * target, "generation stalled");
        let n = 4 + (rng.next_u64() as usize) % 9; // n ≤ 12
        let k1 = 1 + (rng.next_u64() as usize) % 5;
        let c1 = LinearCode::from_generator(&random_matrix(&mut rng, k1, n));
        let c2 = if attempts % 2 == 0 {
            random_subcode(&mut rng, &max_csst_partner(&c1))
        } else {
            let k2 = 1 + (rng.next_u64() as usize) % 4;
            LinearCode::from_generator(&random_matrix(&mut rng, k2, n))
        };
        if c2.k() > 4 {
            continue;
        }
        let fast = is_csst_pair(&c1, &c2, 2).unwrap().is_pair;
        match csst_definitional_check(&c1, &c2, &limits).unwrap() {
            OracleVerdict::Inconclusive => {}
            OracleVerdict::True => {
                assert!(fast, "definition true but algebraic check false (n={n})");
                conclusive += 1;
                agree_true += 1;
            }
            OracleVerdict::False => {
                assert!(!fast, "definition false but algebraic check true (n={n})");
                conclusive += 1;
                agree_false += 1;
            }
        }
    }
    assert!(agree_true > 0 && agree_false > 0, "need both outcomes");
    println!(
        "PASS criterion 9: definitional oracle agreed on {conclusive} conclusive instances \
         ({agree_true} true, {agree_false} false)"
    );
}

#[test]
fn criterion_10_search_determinism() {
    let start = Instant::now();
    let args = [
        "search", "--L", "4", "--m", "2", "--n", "4", "--samples", "1000", "--seed", "7",
        "--min-k", "1",
    ];
    let first = run_ok(bin().args(args));
    let single_run = start.elapsed();
    let second = run_ok(bin().args(args));
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    // Worker count must not affect the stream either.
    let threaded = run_ok(bin().args(args).args(["--threads", "4"]));
    assert_eq!(first.stdout, threaded.stdout, "thread count changed the stream");

    let lines = first.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty());
    assert_eq!(lines.count(), 1001); // 1000 records + summary tail

    assert!(
        single_run.as_secs_f64() < 30.0,
        "single-threaded search took {single_run:?}"
    );
    println!(
        "PASS criterion 10: two 1000-candidate searches byte-identical (and thread-count \
         invariant), single run in {single_run:?}"
    );
}

#[test]
fn construct_analyze_round_trip() {
    // The CLI contract behind criterion 1: analyze re-reports the [n,k]
    // that construct printed.
    let h_path = std::env::temp_dir().join(format!("csstk-rt-{}.txt", std::process::id()));
    let out = run_ok(bin()
        .args(["construct", "--L", "4", "--base", EX1_BASE, "-o"])
        .arg(&h_path));
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(stderr.contains("[16,6]"), "stderr was: {stderr}");
    let out = run_ok(bin().arg("analyze").arg(&h_path));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["n"], 16);
    assert_eq!(json["k"], 6);
    assert_eq!(json["min_weight"], 4);
    assert_eq!(json["density"]["class"], "low");
    std::fs::remove_file(&h_path).ok();
}

#[test]
fn example1_quantum_params_via_library() {
    // Cross-check of criterion 1 through the library path.
    let c1 = LinearCode::from_generator(&BitMatrix::parse_text(EX1_G1).unwrap());
    let c2 = max_csst_partner(&c1);
    assert_eq!(c2, c1);
    let p = quantum_params(&c1, &c2, 1 << 16).unwrap();
    assert_eq!((p.n, p.k, p.d_lower), (16, 0, Some(2)));
}
