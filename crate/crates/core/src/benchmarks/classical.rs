//! Classical test functions F1–F19.
//!
//! F1–F7 are unimodal, F8–F13 multimodal with scalable dimension, F14–F19
//! multimodal with a fixed dimension. The coefficient tables for Shekel's
//! foxholes (F14), Kowalik (F15) and Hartmann-3 (F19) are the standard ones
//! from the benchmark literature.

use std::f64::consts::{E, PI};

use crate::problem::{Bounds, Objective, Problem};
use crate::rng::RandomSource;

/// Per-dimension minimum of F8 (Schwefel 2.26).
pub const SCHWEFEL_MIN_PER_DIM: f64 = -418.982_887_272_433_8;
/// Coordinate of the F8 minimizer.
pub const SCHWEFEL_TARGET: f64 = 420.968_746_227_503_6;

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Schwefel 2.22: `Σ|x| + Π|x|`.
pub fn schwefel_2_22(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    sum + prod
}

/// Schwefel 1.2: squared prefix sums.
pub fn schwefel_1_2(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    x.iter()
        .map(|v| {
            prefix += v;
            prefix * prefix
        })
        .sum()
}

/// Schwefel 2.21: `max |x_i|`.
pub fn schwefel_2_21(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

/// Step function: `Σ floor(x + 0.5)²`.
pub fn step(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5).floor().powi(2)).sum()
}

/// `Σ i·x_i⁴` without the noise term of F7.
pub fn quartic(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v.powi(4))
        .sum()
}

/// F7: quartic plus `Uniform[0, 1)` noise drawn from the evaluation stream.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoisyQuartic;

impl Objective for NoisyQuartic {
    fn evaluate(&self, x: &[f64], noise: &mut dyn RandomSource) -> f64 {
        quartic(x) + noise.uniform()
    }

    fn is_stochastic(&self) -> bool {
        true
    }
}

/// Schwefel 2.26: `Σ -x sin(√|x|)`.
pub fn schwefel_2_26(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

/// Boundary penalty shared by F12 and F13.
pub fn boundary_penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

/// Generalized penalized function 1.
pub fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let mut body = 10.0 * (PI * y[0]).sin().powi(2);
    for i in 0..n - 1 {
        body += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
    }
    body += (y[n - 1] - 1.0).powi(2);
    let penalty: f64 = x.iter().map(|v| boundary_penalty(*v, 10.0, 100.0, 4)).sum();
    PI / n as f64 * body + penalty
}

/// Generalized penalized function 2.
pub fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut body = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        body += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    body += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    let penalty: f64 = x.iter().map(|v| boundary_penalty(*v, 10.0, 100.0, 4)).sum();
    0.1 * body + penalty
}

const FOXHOLE_GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

/// Shekel's foxholes.
pub fn foxholes(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    for j in 0..25 {
        let a1 = FOXHOLE_GRID[j % 5];
        let a2 = FOXHOLE_GRID[j / 5];
        sum += 1.0 / ((j + 1) as f64 + (x[0] - a1).powi(6) + (x[1] - a2).powi(6));
    }
    1.0 / (1.0 / 500.0 + sum)
}

const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
const KOWALIK_INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

pub fn kowalik(x: &[f64]) -> f64 {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_INV_B)
        .map(|(a, inv_b)| {
            let b = 1.0 / inv_b;
            let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
            (a - model).powi(2)
        })
        .sum()
}

pub fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

pub fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
        + 10.0
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let first = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let second = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    first * second
}

const HARTMANN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];
const HARTMANN3_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
const HARTMANN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];

pub fn hartmann3(x: &[f64]) -> f64 {
    -(0..4)
        .map(|i| {
            let inner: f64 = (0..3)
                .map(|j| HARTMANN3_A[i][j] * (x[j] - HARTMANN3_P[i][j]).powi(2))
                .sum();
            HARTMANN3_C[i] * (-inner).exp()
        })
        .sum::<f64>()
}

fn boxed(id: &str, dim: usize, low: f64, high: f64, f: fn(&[f64]) -> f64) -> Problem {
    Problem::new(id, Bounds::uniform(dim, low, high).expect("static bounds"), f)
}

/// Builds classical function `F{number}` at dimension `dim`.
///
/// Fixed-dimension functions (F14–F19) ignore `dim`.
pub fn classical(number: usize, dim: usize) -> Option<Problem> {
    let id = format!("F{number}");
    let zeros = || Some(vec![0.0; dim]);
    let p = match number {
        1 => boxed(&id, dim, -100.0, 100.0, sphere).with_optimum(0.0, zeros()),
        2 => boxed(&id, dim, -10.0, 10.0, schwefel_2_22).with_optimum(0.0, zeros()),
        3 => boxed(&id, dim, -100.0, 100.0, schwefel_1_2).with_optimum(0.0, zeros()),
        4 => boxed(&id, dim, -100.0, 100.0, schwefel_2_21).with_optimum(0.0, zeros()),
        5 => boxed(&id, dim, -30.0, 30.0, rosenbrock).with_optimum(0.0, Some(vec![1.0; dim])),
        6 => boxed(&id, dim, -100.0, 100.0, step).with_optimum(0.0, zeros()),
        7 => Problem::new(
            &id,
            Bounds::uniform(dim, -1.28, 1.28).expect("static bounds"),
            NoisyQuartic,
        )
        .with_optimum(0.0, zeros()),
        8 => boxed(&id, dim, -500.0, 500.0, schwefel_2_26).with_optimum(
            SCHWEFEL_MIN_PER_DIM * dim as f64,
            Some(vec![SCHWEFEL_TARGET; dim]),
        ),
        9 => boxed(&id, dim, -5.12, 5.12, rastrigin).with_optimum(0.0, zeros()),
        10 => boxed(&id, dim, -32.0, 32.0, ackley).with_optimum(0.0, zeros()),
        11 => boxed(&id, dim, -600.0, 600.0, griewank).with_optimum(0.0, zeros()),
        12 => boxed(&id, dim, -50.0, 50.0, penalized_1).with_optimum(0.0, Some(vec![-1.0; dim])),
        13 => boxed(&id, dim, -50.0, 50.0, penalized_2).with_optimum(0.0, Some(vec![1.0; dim])),
        14 => boxed(&id, 2, -65.0, 65.0, foxholes).with_optimum(
            0.998_003_837_794_450_2,
            Some(vec![-31.978_332_226_650_91, -31.978_343_769_641_44]),
        ),
        15 => boxed(&id, 4, -5.0, 5.0, kowalik).with_optimum(
            3.074_859_878_056_055_7e-4,
            Some(vec![
                0.192_833_453_081_292_74,
                0.190_836_239_990_794_9,
                0.123_117_299_277_168_3,
                0.135_765_990_269_031_94,
            ]),
        ),
        16 => boxed(&id, 2, -5.0, 5.0, six_hump_camel).with_optimum(
            -1.031_628_453_489_877_6,
            Some(vec![0.089_842_016_529_270_98, -0.712_656_401_380_720_2]),
        ),
        17 => boxed(&id, 2, -5.0, 5.0, branin)
            .with_optimum(5.0 / (4.0 * PI), Some(vec![PI, 2.275])),
        18 => boxed(&id, 2, -2.0, 2.0, goldstein_price).with_optimum(3.0, Some(vec![0.0, -1.0])),
        19 => boxed(&id, 3, 0.0, 1.0, hartmann3).with_optimum(
            -3.862_782_147_820_755_4,
            Some(vec![
                0.114_614_342_030_829_51,
                0.555_648_850_790_538_4,
                0.852_546_953_846_025_1,
            ]),
        ),
        _ => return None,
    };
    Some(p)
}
