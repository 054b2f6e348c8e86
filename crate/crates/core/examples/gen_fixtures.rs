//! Regenerates the synthetic CSV fixtures under `fixtures/`.
//!
//! ```text
//! cargo run -p hdds --example gen_fixtures
//! ```

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{LogNormal, Normal, StandardNormal};

const GENDERS: [&str; 2] = ["male", "female"];
const JOBS: [&str; 4] = [
    "blue-collar",
    "office worker",
    "cadre/manager",
    "self-employed",
];

/// Joint counts whose relative frequencies round to the published
/// gender × employment contingency table.
const SHIW_COUNTS: [[usize; 4]; 2] = [[2516, 1510, 400, 1350], [1416, 2008, 200, 600]];
const SOUTH_COUNTS: [[usize; 4]; 2] = [[820, 310, 60, 330], [390, 420, 25, 145]];
const MEDIAN_INCOME: [f64; 4] = [17_000.0, 23_000.0, 42_000.0, 27_000.0];

fn income_rows(counts: &[[usize; 4]; 2], scale: f64, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            let gender_factor = if i == 0 { 1.0 } else { 0.82 };
            let median = MEDIAN_INCOME[j] * gender_factor * scale;
            let dist = LogNormal::new(median.ln(), 0.38).unwrap();
            for _ in 0..c {
                rows.push(format!(
                    "{:.2},{},{}",
                    rng.sample(dist),
                    GENDERS[i],
                    JOBS[j]
                ));
            }
        }
    }
    rows.shuffle(&mut rng);
    let mut out = String::from("income,gender,employment\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn column(name: &str, values: &[f64]) -> String {
    let mut out = format!("{name}\n");
    for v in values {
        let _ = writeln!(out, "{v:.4}");
    }
    out
}

fn mixture(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            if rng.gen_bool(0.5) {
                z - 1.5
            } else {
                z + 1.5
            }
        })
        .collect()
}

fn share(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = ["single", "married", "widowed"];
    let income = LogNormal::new(9.8f64, 0.6).unwrap();
    let noise = Normal::new(0.0, 1.6).unwrap();
    let mut out = String::from("satisfaction,income,family\n");
    for _ in 0..2400 {
        let f = rng.gen_range(0..3);
        let inc: f64 = rng.sample(income);
        let mean = 5.2 + 0.9 * (inc.ln() - 9.8) + [0.0, 0.8, -0.5][f];
        let s = (mean + rng.sample(noise)).round().clamp(0.0, 10.0);
        let _ = writeln!(out, "{s},{inc:.2},{}", family[f]);
    }
    out
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: String| std::fs::write(dir.join(name), body).unwrap();

    write("shiw.csv", income_rows(&SHIW_COUNTS, 1.0, 2016));
    write("shiw_south.csv", income_rows(&SOUTH_COUNTS, 0.78, 2017));
    write("mixture.csv", column("z", &mixture(1600, 1600)));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bimodal: Vec<f64> = (0..1200)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            if rng.gen_bool(0.3) {
                -2.5 + 0.8 * z
            } else {
                2.5 + z
            }
        })
        .collect();
    let unimodal: Vec<f64> = (0..1200)
        .map(|_| 1.5 * rng.sample::<f64, _>(StandardNormal))
        .collect();
    write("bimodal.csv", column("z", &bimodal));
    write("unimodal.csv", column("z", &unimodal));
    write("share.csv", share(7));
}
