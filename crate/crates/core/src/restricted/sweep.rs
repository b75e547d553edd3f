//! Exhaustive enumeration of small restricted presentations.

use std::fmt;
use std::str::FromStr;

use super::RestrictedLieAlgebra;
use crate::algebra::Odometer;
use crate::fields::{Field, FiniteField};
use crate::linalg::{self, Matrix};

/// A family of presentations: every valid `(bracket, pmap)` pair over a
/// prime field in dimensions `1..=max_dim`, distinct as tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepFamily {
    F2D3,
    F3D2,
}

impl SweepFamily {
    pub const ALL: [SweepFamily; 2] = [SweepFamily::F2D3, SweepFamily::F3D2];

    pub fn id(self) -> &'static str {
        match self {
            SweepFamily::F2D3 => "restricted-f2-d3",
            SweepFamily::F3D2 => "restricted-f3-d2",
        }
    }

    pub fn prime(self) -> u32 {
        match self {
            SweepFamily::F2D3 => 2,
            SweepFamily::F3D2 => 3,
        }
    }

    pub fn max_dim(self) -> usize {
        match self {
            SweepFamily::F2D3 => 3,
            SweepFamily::F3D2 => 2,
        }
    }
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SweepFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|fam| fam.id() == s).ok_or_else(|| format!("unknown sweep family '{s}'"))
    }
}

/// All presentations of the family, by increasing dimension, then bracket
/// tables in scan order of the coordinates of `[e_i, e_j]` (`i < j`,
/// row-major, earliest pair most significant), then p-maps in scan order
/// of `e_0^[p], e_1^[p], ...`.
pub fn sweep_family(family: SweepFamily) -> Vec<RestrictedLieAlgebra<FiniteField>> {
    let f = FiniteField::prime(family.prime()).expect("prime");
    (1..=family.max_dim()).flat_map(|n| presentations(&f, n)).collect()
}

/// Valid presentations of dimension `n` over the finite field `f`.
pub fn presentations(f: &FiniteField, n: usize) -> Vec<RestrictedLieAlgebra<FiniteField>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut odo = Odometer::new(f, pairs.len() * n);
    loop {
        let coords = odo.coords();
        let mut bracket = vec![vec![vec![f.zero(); n]; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let v = coords[k * n..(k + 1) * n].to_vec();
            bracket[j][i] = linalg::vec_scale(f, &f.neg(&f.one()), &v);
            bracket[i][j] = v;
        }
        if jacobi_holds(f, &bracket) {
            push_pmaps(f, &bracket, &mut out);
        }
        if odo.advance().is_none() {
            return out;
        }
    }
}

fn bracket_vec(f: &FiniteField, table: &[Vec<Vec<u32>>], u: &[u32], v: &[u32]) -> Vec<u32> {
    let mut out = vec![f.zero(); u.len()];
    for (i, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            if *a != 0 && *b != 0 {
                linalg::axpy(f, &mut out, &f.mul(a, b), &table[i][j]);
            }
        }
    }
    out
}

fn jacobi_holds(f: &FiniteField, table: &[Vec<Vec<u32>>]) -> bool {
    let n = table.len();
    let e = |i: usize| linalg::unit_vector(f, n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = bracket_vec(f, table, &e(i), &table[j][k]);
                let b = bracket_vec(f, table, &e(j), &table[k][i]);
                let c = bracket_vec(f, table, &e(k), &table[i][j]);
                if !linalg::is_zero_vec(f, &linalg::vec_add(f, &linalg::vec_add(f, &a, &b), &c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn ad(f: &FiniteField, table: &[Vec<Vec<u32>>], u: &[u32]) -> Matrix<u32> {
    let n = table.len();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| bracket_vec(f, table, u, &linalg::unit_vector(f, n, j))).collect();
    Matrix::from_columns(n, &cols)
}

/// Appends every restricted p-map for `table`. The admissible images of
/// each `e_i` are the `y` with `ad y = (ad e_i)^p`, chosen independently.
fn push_pmaps(f: &FiniteField, table: &[Vec<Vec<u32>>], out: &mut Vec<RestrictedLieAlgebra<FiniteField>>) {
    let n = table.len();
    let p = f.characteristic();
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut odo = Odometer::new(f, n);
    loop {
        all.push(odo.coords().to_vec());
        if odo.advance().is_none() {
            break;
        }
    }
    let ads: Vec<Matrix<u32>> = all.iter().map(|y| ad(f, table, y)).collect();
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let a = ad(f, table, &linalg::unit_vector(f, n, i));
            let mut target = a.clone();
            for _ in 1..p {
                target = linalg::mat_mul(f, &target, &a);
            }
            (0..all.len()).filter(|&y| ads[y] == target).collect()
        })
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; n];
    loop {
        let pmap = (0..n).map(|i| all[choices[i][pick[i]]].clone()).collect();
        let lie = RestrictedLieAlgebra::new(f.clone(), table.to_vec(), pmap).expect("enumerated presentation is valid");
        out.push(lie);
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}
