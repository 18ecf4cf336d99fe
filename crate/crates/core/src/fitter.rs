//! Exact integer-coefficient affine equations for root functions.
//!
//! A root function `f(u1, ..., uk)` is accepted when some integers
//! `c0, c1, ..., ck` satisfy `c0 + Σ ci·ui = x` for every observed sample.
//! Everything here is exact: rationals over arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("no samples to fit")]
    NoSamples,
    #[error("sample has {got} arguments, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("coefficient outside the 128-bit range")]
    CoefficientOverflow,
}

/// `x = constant + Σ coefficients[i]·args[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEquation {
    pub constant: i128,
    pub coefficients: Vec<i128>,
}

impl AffineEquation {
    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    /// `None` on arity mismatch or overflow.
    pub fn evaluate(&self, args: &[i64]) -> Option<i128> {
        if args.len() != self.coefficients.len() {
            return None;
        }
        self.coefficients
            .iter()
            .zip(args)
            .try_fold(self.constant, |acc, (&c, &u)| {
                acc.checked_add(c.checked_mul(u as i128)?)
            })
    }
}

impl fmt::Display for AffineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        let mut terms = Vec::new();
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = NAMES
                .get(i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("u{}", i + 1));
            terms.push(match c {
                1 => name,
                -1 => format!("-{name}"),
                _ => format!("{c} * {name}"),
            });
        }
        if self.constant != 0 || terms.is_empty() {
            terms.push(self.constant.to_string());
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitOutcome {
    Exact(AffineEquation),
    /// No affine equation over the rationals fits.
    Inconsistent,
    /// Rational solutions exist, none with all-integer coefficients.
    NonIntegerOnly,
    /// One argument tuple maps to two values.
    Conflict,
}

impl FitOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            FitOutcome::Exact(_) => "exact",
            FitOutcome::Inconsistent => "inconsistent",
            FitOutcome::NonIntegerOnly => "noninteger",
            FitOutcome::Conflict => "conflict",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FitOutcome::Exact(_))
    }

    pub fn equation(&self) -> Option<&AffineEquation> {
        match self {
            FitOutcome::Exact(eq) => Some(eq),
            _ => None,
        }
    }
}

impl Serialize for FitOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FitOutcome", 3)?;
        s.serialize_field("status", self.status())?;
        match self {
            FitOutcome::Exact(eq) => {
                s.serialize_field("c0", &eq.constant)?;
                s.serialize_field("coeffs", &eq.coefficients)?;
            }
            _ => {
                s.serialize_field("c0", &None::<i128>)?;
                s.serialize_field("coeffs", &None::<Vec<i128>>)?;
            }
        }
        s.end()
    }
}

/// True iff every sample satisfies `eq` exactly.
pub fn verify<'a, I>(eq: &AffineEquation, samples: I) -> bool
where
    I: IntoIterator<Item = (&'a [i64], i64)>,
{
    samples
        .into_iter()
        .all(|(args, value)| eq.evaluate(args) == Some(value as i128))
}

/// Fits `c0 + Σ ci·ui = x` to the samples.
///
/// Free coefficients of an underdetermined system are pinned to zero with
/// pivots chosen constant-first, so a single sample `(8) → 18` fits as the
/// constant 18. When that particular solution is fractional, the integer
/// solution lattice is searched before reporting [`FitOutcome::NonIntegerOnly`].
pub fn fit_affine<'a, I>(samples: I, arity: usize) -> Result<FitOutcome, FitError>
where
    I: IntoIterator<Item = (&'a [i64], i64)>,
{
    let mut by_args: BTreeMap<&[i64], i64> = BTreeMap::new();
    let mut conflict = false;
    for (args, value) in samples {
        if args.len() != arity {
            return Err(FitError::ArityMismatch {
                expected: arity,
                got: args.len(),
            });
        }
        match by_args.insert(args, value) {
            Some(prev) if prev != value => conflict = true,
            _ => {}
        }
    }
    if by_args.is_empty() {
        return Err(FitError::NoSamples);
    }
    if conflict {
        return Ok(FitOutcome::Conflict);
    }

    let cols = arity + 1;
    let mut rows: Vec<Vec<BigRational>> = by_args
        .iter()
        .map(|(args, &value)| {
            let mut row = Vec::with_capacity(cols + 1);
            row.push(BigRational::one());
            row.extend(args.iter().map(|&u| BigRational::from_integer(u.into())));
            row.push(BigRational::from_integer(value.into()));
            row
        })
        .collect();

    let pivots = match reduce(&mut rows, cols) {
        Some(p) => p,
        None => return Ok(FitOutcome::Inconsistent),
    };

    let mut solution = vec![BigRational::zero(); cols];
    for (row, &col) in rows.iter().zip(&pivots) {
        solution[col] = row[cols].clone();
    }
    if solution.iter().all(|c| c.is_integer()) {
        let ints: Vec<BigInt> = solution.into_iter().map(|c| c.to_integer()).collect();
        return to_equation(&ints).map(FitOutcome::Exact);
    }

    match integer_solution(&rows[..pivots.len()], cols) {
        Some(ints) => to_equation(&ints).map(FitOutcome::Exact),
        None => Ok(FitOutcome::NonIntegerOnly),
    }
}

/// Gauss-Jordan elimination of the augmented matrix in place. Returns the
/// pivot column of each leading row, or `None` if the system is inconsistent.
fn reduce(rows: &mut [Vec<BigRational>], cols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let consistent = rows[r..].iter().all(|row| row[cols].is_zero());
    consistent.then_some(pivots)
}

/// Integer solution of the full-row-rank system `rows` (augmented, rational)
/// via unimodular column operations, or `None` if there is none.
fn integer_solution(rows: &[Vec<BigRational>], cols: usize) -> Option<Vec<BigInt>> {
    // Clear denominators row by row; this preserves the solution set.
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let rhs: Vec<BigInt> = m
        .iter_mut()
        .map(|row| row.pop().expect("augmented row"))
        .collect();

    // m · u = lower-triangular, tracking u.
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let rank = m.len();
    for i in 0..rank {
        for j in i + 1..cols {
            if m[i][j].is_zero() {
                continue;
            }
            let a = m[i][i].clone();
            let b = m[i][j].clone();
            let eg = a.extended_gcd(&b);
            let (g, p, q) = (eg.gcd, eg.x, eg.y);
            let (a_g, b_g) = (&a / &g, &b / &g);
            combine_columns(&mut m, i, j, &p, &q, &b_g, &a_g);
            combine_columns(&mut u, i, j, &p, &q, &b_g, &a_g);
        }
        if m[i][i].is_zero() {
            return None;
        }
    }

    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rank {
        let partial: BigInt = (0..i).map(|j| &m[i][j] * &y[j]).sum();
        let rest = &rhs[i] - partial;
        let (q, r) = rest.div_rem(&m[i][i]);
        if !r.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(
        (0..cols)
            .map(|row| (0..cols).map(|k| &u[row][k] * &y[k]).sum())
            .collect(),
    )
}

/// Column update `(ci, cj) ← (p·ci + q·cj, -b_g·ci + a_g·cj)`; unimodular
/// since `p·a_g + q·b_g = 1`.
fn combine_columns(
    mat: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    p: &BigInt,
    q: &BigInt,
    b_g: &BigInt,
    a_g: &BigInt,
) {
    for row in mat.iter_mut() {
        let ci = row[i].clone();
        let cj = row[j].clone();
        row[i] = p * &ci + q * &cj;
        row[j] = a_g * &cj - b_g * &ci;
    }
}

fn to_equation(ints: &[BigInt]) -> Result<AffineEquation, FitError> {
    let mut vals = ints
        .iter()
        .map(|v| v.to_i128().ok_or(FitError::CoefficientOverflow));
    let constant = vals.next().expect("constant column")?;
    let coefficients = vals.collect::<Result<Vec<_>, _>>()?;
    Ok(AffineEquation {
        constant,
        coefficients,
    })
}
