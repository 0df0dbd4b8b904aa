//! The ten CEC 2019 "100-digit challenge" functions.
//!
//! CEC01–CEC03 are used as defined, unshifted and unrotated. CEC04–CEC10 are
//! evaluated on `z = M · (rate · (x − o))` where `o` is a shift vector, `M` a
//! rotation and `rate` the per-function range scaling of the reference code.
//! Shift and rotation come from the official data files when a data directory
//! is supplied; otherwise `o = 0`, `M = I` and the problem is flagged
//! `unofficial`. Every function has a global minimum of 1.

use std::f64::consts::{E, PI};
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::problem::{Bounds, Objective, Problem};
use crate::rng::RandomSource;

pub const UNOFFICIAL_FLAG: &str = "unofficial";

/// Constant that lifts the 6-atom Lennard-Jones minimum to zero.
const LENNARD_JONES_OFFSET: f64 = 12.712_062_256_8;

/// Edge length of the minimum-energy 6-atom octahedron.
const LJ_OCTAHEDRON_EDGE: f64 = 0.995_531_178_525_909_3;

/// Storn's Chebyshev polynomial fitting problem.
pub fn chebyshev_fitting(x: &[f64]) -> f64 {
    let n = x.len();
    // Chebyshev polynomial T_{n-1} evaluated at 1.2.
    let (mut a, mut b) = (1.0, 1.2);
    for _ in 0..n.saturating_sub(2) {
        let next = 2.4 * b - a;
        a = b;
        b = next;
    }
    let threshold = b;
    let poly = |t: f64| x.iter().fold(0.0, |acc, c| acc * t + c);

    let mut sum = 0.0;
    for t in [1.2, -1.2] {
        let p = poly(t);
        if p < threshold {
            sum += (p - threshold).powi(2);
        }
    }
    let samples = 32 * n;
    for k in 0..=samples {
        let t = 2.0 * k as f64 / samples as f64 - 1.0;
        let p = poly(t);
        if p > 1.0 {
            sum += (p - 1.0).powi(2);
        } else if p < -1.0 {
            sum += (p + 1.0).powi(2);
        }
    }
    sum + 1.0
}

/// Inverse Hilbert matrix problem: `Σ |H·Z − I|` with `Z` the row-major
/// reshape of `x`.
pub fn inverse_hilbert(x: &[f64]) -> f64 {
    let n = (x.len() as f64).sqrt().round() as usize;
    let mut sum = 0.0;
    for i in 0..n {
        for k in 0..n {
            let mut w = 0.0;
            for j in 0..n {
                w += x[j * n + k] / (i + j + 1) as f64;
            }
            if i == k {
                w -= 1.0;
            }
            sum += w.abs();
        }
    }
    sum + 1.0
}

/// Lennard-Jones cluster energy; `x` holds consecutive `(x, y, z)` atoms.
pub fn lennard_jones(x: &[f64]) -> f64 {
    let atoms = x.len() / 3;
    let mut sum = 0.0;
    for i in 0..atoms {
        for j in i + 1..atoms {
            let d2: f64 = (0..3).map(|c| (x[3 * i + c] - x[3 * j + c]).powi(2)).sum();
            let d6 = d2 * d2 * d2;
            sum += if d6 > 1e-10 {
                (1.0 / d6 - 2.0) / d6
            } else {
                1e20
            };
        }
    }
    sum + LENNARD_JONES_OFFSET + 1.0
}

/// Octahedral arrangement attaining the 6-atom minimum.
pub fn lennard_jones_minimizer() -> Vec<f64> {
    let r = LJ_OCTAHEDRON_EDGE / std::f64::consts::SQRT_2;
    let mut x = Vec::with_capacity(18);
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut atom = [0.0; 3];
            atom[axis] = sign * r;
            x.extend_from_slice(&atom);
        }
    }
    x
}

fn rastrigin_core(z: &[f64]) -> f64 {
    z.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

fn griewank_core(z: &[f64]) -> f64 {
    let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = z
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

fn weierstrass_core(z: &[f64]) -> f64 {
    const A: f64 = 0.5;
    const B: f64 = 3.0;
    const K_MAX: i32 = 20;
    let mut total = 0.0;
    let mut base = 0.0;
    for k in 0..=K_MAX {
        let ak = A.powi(k);
        let bk = B.powi(k);
        base += ak * (PI * bk).cos();
        for v in z {
            total += ak * (2.0 * PI * bk * (v + 0.5)).cos();
        }
    }
    total - z.len() as f64 * base
}

fn modified_schwefel_core(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let mut f = 0.0;
    for v in z {
        let zi = v + 420.968_746_227_503_6;
        if zi > 500.0 {
            let m = 500.0 - zi % 500.0;
            f -= m * m.sqrt().sin();
            f += ((zi - 500.0) / 100.0).powi(2) / n;
        } else if zi < -500.0 {
            let m = zi.abs() % 500.0;
            f -= (-500.0 + m) * (500.0 - m).sqrt().sin();
            f += ((zi + 500.0) / 100.0).powi(2) / n;
        } else {
            f -= zi * zi.abs().sqrt().sin();
        }
    }
    f + 418.982_887_272_433_8 * n
}

fn expanded_schaffer_f6_core(z: &[f64]) -> f64 {
    let n = z.len();
    let g = |a: f64, b: f64| {
        let s = a * a + b * b;
        let num = s.sqrt().sin().powi(2) - 0.5;
        let den = (1.0 + 0.001 * s).powi(2);
        0.5 + num / den
    };
    (0..n).map(|i| g(z[i], z[(i + 1) % n])).sum()
}

fn happy_cat_core(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let shifted: Vec<f64> = z.iter().map(|v| v - 1.0).collect();
    let r2: f64 = shifted.iter().map(|v| v * v).sum();
    let sum: f64 = shifted.iter().sum();
    (r2 - n).abs().powf(0.25) + (0.5 * r2 + sum) / n + 0.5
}

fn ackley_core(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq = z.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

/// Shift and rotation applied before a base function.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    pub shift: Vec<f64>,
    /// Row-major `dim × dim`.
    pub rotation: Vec<f64>,
}

impl Transform {
    pub fn identity(dim: usize) -> Self {
        let mut rotation = vec![0.0; dim * dim];
        for i in 0..dim {
            rotation[i * dim + i] = 1.0;
        }
        Self {
            shift: vec![0.0; dim],
            rotation,
        }
    }

    fn apply(&self, x: &[f64], rate: f64) -> Vec<f64> {
        let n = x.len();
        let y: Vec<f64> = x
            .iter()
            .zip(&self.shift)
            .map(|(v, o)| (v - o) * rate)
            .collect();
        (0..n)
            .map(|i| (0..n).map(|j| self.rotation[i * n + j] * y[j]).sum())
            .collect()
    }
}

struct ShiftedRotated {
    base: fn(&[f64]) -> f64,
    rate: f64,
    transform: Transform,
}

impl Objective for ShiftedRotated {
    fn evaluate(&self, x: &[f64], _noise: &mut dyn RandomSource) -> f64 {
        (self.base)(&self.transform.apply(x, self.rate)) + 1.0
    }
}

type BaseFn = fn(&[f64]) -> f64;

/// Base function and range scaling of CEC04..=CEC10.
fn rotated_spec(number: usize) -> Option<(BaseFn, f64)> {
    Some(match number {
        4 => (rastrigin_core as BaseFn, 5.12 / 100.0),
        5 => (griewank_core, 600.0 / 100.0),
        6 => (weierstrass_core, 0.5 / 100.0),
        7 => (modified_schwefel_core, 1000.0 / 100.0),
        8 => (expanded_schaffer_f6_core, 1.0),
        9 => (happy_cat_core, 5.0 / 100.0),
        10 => (ackley_core, 1.0),
        _ => return None,
    })
}

pub const ROTATED_DIM: usize = 10;

/// Official shift/rotation data for CEC04–CEC10.
#[derive(Debug, Clone, Default)]
pub struct Cec2019Data {
    transforms: Vec<(usize, Transform)>,
}

fn read_numbers(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>().map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                message: format!("`{tok}`: {e}"),
            })
        })
        .collect()
}

impl Cec2019Data {
    /// Reads `shift_data_{k}.txt` and `M_{k}_D10.txt` for `k = 4..=10`.
    ///
    /// Files are whitespace-separated numbers; the rotation is row-major and
    /// only the first `dim` shift entries are used. Functions whose files are
    /// missing keep the identity fallback.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        if !dir.is_dir() {
            return Err(Error::io(
                dir,
                std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
            ));
        }
        let mut transforms = Vec::new();
        for k in 4..=10 {
            let shift_path: PathBuf = dir.join(format!("shift_data_{k}.txt"));
            let rot_path: PathBuf = dir.join(format!("M_{k}_D{ROTATED_DIM}.txt"));
            if !(shift_path.exists() && rot_path.exists()) {
                continue;
            }
            let shift = read_numbers(&shift_path)?;
            let rotation = read_numbers(&rot_path)?;
            if shift.len() < ROTATED_DIM {
                return Err(Error::Parse {
                    path: shift_path,
                    message: format!("need at least {ROTATED_DIM} values, found {}", shift.len()),
                });
            }
            if rotation.len() < ROTATED_DIM * ROTATED_DIM {
                return Err(Error::Parse {
                    path: rot_path,
                    message: format!(
                        "need {} values, found {}",
                        ROTATED_DIM * ROTATED_DIM,
                        rotation.len()
                    ),
                });
            }
            transforms.push((
                k,
                Transform {
                    shift: shift[..ROTATED_DIM].to_vec(),
                    rotation: rotation[..ROTATED_DIM * ROTATED_DIM].to_vec(),
                },
            ));
        }
        Ok(Self { transforms })
    }

    pub fn transform(&self, number: usize) -> Option<&Transform> {
        self.transforms
            .iter()
            .find(|(k, _)| *k == number)
            .map(|(_, t)| t)
    }

    pub fn is_empty(&self) -> bool {
        self.transforms.is_empty()
    }
}

/// Builds `CEC{number:02}`.
pub fn cec2019(number: usize, data: Option<&Cec2019Data>) -> Option<Problem> {
    let id = format!("CEC{number:02}");
    let uniform = |dim: usize, r: f64| Bounds::uniform(dim, -r, r).expect("static bounds");
    let p = match number {
        1 => Problem::new(&id, uniform(9, 8192.0), chebyshev_fitting as fn(&[f64]) -> f64)
            .with_optimum(
                1.0,
                Some(vec![128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0]),
            ),
        2 => Problem::new(&id, uniform(16, 16384.0), inverse_hilbert as fn(&[f64]) -> f64)
            .with_optimum(
                1.0,
                Some(vec![
                    16.0, -120.0, 240.0, -140.0, //
                    -120.0, 1200.0, -2700.0, 1680.0, //
                    240.0, -2700.0, 6480.0, -4200.0, //
                    -140.0, 1680.0, -4200.0, 2800.0,
                ]),
            ),
        3 => Problem::new(&id, uniform(18, 4.0), lennard_jones as fn(&[f64]) -> f64)
            .with_optimum(1.0, Some(lennard_jones_minimizer())),
        4..=10 => {
            let (base, rate) = rotated_spec(number)?;
            let official = data.and_then(|d| d.transform(number)).cloned();
            let is_official = official.is_some();
            let transform = official.unwrap_or_else(|| Transform::identity(ROTATED_DIM));
            let location = if is_official {
                transform.shift.clone()
            } else {
                vec![0.0; ROTATED_DIM]
            };
            let mut p = Problem::new(
                &id,
                uniform(ROTATED_DIM, 100.0),
                ShiftedRotated {
                    base,
                    rate,
                    transform,
                },
            )
            .with_optimum(1.0, Some(location));
            if !is_official {
                p = p.with_flag(UNOFFICIAL_FLAG);
            }
            p
        }
        _ => return None,
    };
    Some(p)
}
