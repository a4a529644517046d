//! Gauss–Jordan elimination to reduced row echelon form.
//!
//! GF(p) works directly on residues. The rational path clears denominators row by row,
//! eliminates with integer cross-multiplication and strips row content after every
//! update, then divides by the pivots once at the end.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Zero};

use super::field::{inv_mod, mul_mod, FieldSpec, Scalar};

pub(crate) struct Echelon {
    pub data: Vec<Scalar>,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref(field: FieldSpec, rows: usize, cols: usize, data: &[Scalar]) -> Echelon {
    match field {
        FieldSpec::Prime(p) => rref_mod(p, rows, cols, data),
        FieldSpec::Rational => rref_rational(rows, cols, data),
    }
}

fn rref_mod(p: u64, rows: usize, cols: usize, data: &[Scalar]) -> Echelon {
    let mut a: Vec<u64> = data
        .iter()
        .map(|s| match s {
            Scalar::Mod(x) => *x,
            Scalar::Rat(_) => unreachable!("rational entry in GF({p}) matrix"),
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(r) = (pr..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if r != pr {
            for j in 0..cols {
                a.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = inv_mod(a[pr * cols + c], p);
        for j in c..cols {
            a[pr * cols + j] = mul_mod(a[pr * cols + j], inv, p);
        }
        for i in 0..rows {
            let f = a[i * cols + c];
            if i == pr || f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, a[pr * cols + j], p);
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Echelon {
        data: a.into_iter().map(Scalar::Mod).collect(),
        pivots,
    }
}

fn strip_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn rref_rational(rows: usize, cols: usize, data: &[Scalar]) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let entries: Vec<&BigRational> = data[r * cols..(r + 1) * cols]
                .iter()
                .map(|s| match s {
                    Scalar::Rat(x) => x,
                    Scalar::Mod(_) => unreachable!("GF(p) entry in rational matrix"),
                })
                .collect();
            let lcm = entries.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut row: Vec<BigInt> = entries
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            strip_content(&mut row);
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(r) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let pivot_row = a[pr].clone();
        let pv = &pivot_row[c];
        for (i, row) in a.iter_mut().enumerate() {
            if i == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                row[j] = pv * &row[j] - &f * &pivot_row[j];
            }
            strip_content(row);
        }
        pivots.push(c);
        pr += 1;
    }

    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in a.iter().enumerate() {
        let pivot = pivots.get(i).map(|&c| row[c].clone());
        for x in row {
            let v = match &pivot {
                Some(pv) => BigRational::new(x.clone(), pv.clone()),
                None => BigRational::zero(),
            };
            out.push(Scalar::Rat(v));
        }
    }
    Echelon { data: out, pivots }
}
