//! Reduced simplicial homology over `Q` or `GF(p)`, and relative homology
//! over `Z`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

/// Coefficient field for homology and every criterion built on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if linalg::is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn rank(self, m: &IntMatrix) -> usize {
        match self {
            Field::Rationals => linalg::rank_rational(m),
            Field::Prime(p) => linalg::rank_mod_p(m, p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("q"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Format(format!("unknown field `{s}`; expected q or gf:<p>")))?;
        Field::prime(p)
    }
}

/// `dim H̃_i` for `i = -1, 0, ..., dim`; other degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyVector {
    dims: Vec<usize>,
}

impl HomologyVector {
    pub fn get(&self, degree: isize) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.dims.get(i).copied())
            .unwrap_or(0)
    }

    /// Dimensions starting at degree -1.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Lowest degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<isize> {
        self.dims.iter().position(|&d| d != 0).map(|i| i as isize - 1)
    }
}

/// One integer homology group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl IntegerGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Integer homology in degrees `-1, 0, ..., dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerHomologyVector {
    groups: Vec<IntegerGroup>,
}

impl IntegerHomologyVector {
    pub fn get(&self, degree: isize) -> IntegerGroup {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.groups.get(i).cloned())
            .unwrap_or(IntegerGroup {
                rank: 0,
                torsion: Vec::new(),
            })
    }

    /// Groups starting at degree -1.
    pub fn groups(&self) -> &[IntegerGroup] {
        &self.groups
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(IntegerGroup::is_zero)
    }
}

/// Orientation-sign boundary of `face` restricted to the row basis.
fn fill_column(m: &mut IntMatrix, col: usize, face: Face, rows: &[Face]) {
    for (pos, v) in face.iter().enumerate() {
        if let Ok(r) = rows.binary_search(&face.without(v)) {
            m.set(r, col, if pos % 2 == 0 { 1 } else { -1 });
        }
    }
}

fn boundary_between(rows: &[Face], cols: &[Face]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (j, &f) in cols.iter().enumerate() {
        fill_column(&mut m, j, f, rows);
    }
    m
}

/// Augmented chain basis: entry `k` holds the faces of dimension `k - 1`,
/// sorted.
fn chain_basis(complex: &SimplicialComplex) -> Vec<Vec<Face>> {
    let mut by_dim = complex.faces_by_dim();
    for layer in &mut by_dim {
        layer.sort_unstable();
    }
    by_dim
}

fn layer(basis: &[Vec<Face>], degree: isize) -> &[Face] {
    usize::try_from(degree + 1)
        .ok()
        .and_then(|i| basis.get(i))
        .map_or(&[], Vec::as_slice)
}

/// `∂_d : C_d → C_{d-1}` of the augmented chain complex. Rows are the
/// `(d-1)`-faces and columns the `d`-faces, both in canonical order; the
/// sign of dropping the vertex at position `k` is `(-1)^k`.
pub fn boundary_matrix(complex: &SimplicialComplex, d: isize) -> IntMatrix {
    let basis = chain_basis(complex);
    boundary_between(layer(&basis, d - 1), layer(&basis, d))
}

/// Reduced homology `H̃_i(Δ; k)` for `i = -1..=dim Δ`.
pub fn reduced_homology(complex: &SimplicialComplex, field: Field) -> Result<HomologyVector> {
    let dim = complex.require_dim()?;
    let basis = chain_basis(complex);
    let ranks: Vec<usize> = (-1..=dim + 1)
        .map(|d| field.rank(&boundary_between(layer(&basis, d - 1), layer(&basis, d))))
        .collect();
    let dims = (-1..=dim)
        .map(|d| {
            let i = (d + 1) as usize;
            layer(&basis, d).len() - ranks[i] - ranks[i + 1]
        })
        .collect();
    Ok(HomologyVector { dims })
}

/// Homology over `Z` of the quotient of the augmented chain complex of
/// `complex` by that of `sub`. For a nonempty `sub` this is ordinary
/// relative homology; for the void `sub` it is reduced homology of `complex`.
pub fn relative_homology_z(
    complex: &SimplicialComplex,
    sub: &SimplicialComplex,
) -> Result<IntegerHomologyVector> {
    let dim = complex.require_dim()?;
    if !sub.is_subcomplex_of(complex)? {
        let missing = sub.facets().iter().find(|f| !complex.contains(**f));
        return Err(Error::NotSubcomplex(
            missing.map_or_else(String::new, |f| complex.format_face(*f)),
        ));
    }
    let basis: Vec<Vec<Face>> = chain_basis(complex)
        .into_iter()
        .map(|l| l.into_iter().filter(|f| !sub.contains(*f)).collect())
        .collect();
    let invariants: Vec<Vec<BigInt>> = (-1..=dim + 1)
        .map(|d| linalg::smith_invariants(&boundary_between(layer(&basis, d - 1), layer(&basis, d))))
        .collect();
    let groups = (-1..=dim)
        .map(|d| {
            let i = (d + 1) as usize;
            let cycles = layer(&basis, d).len() - invariants[i].len();
            let boundaries = &invariants[i + 1];
            IntegerGroup {
                rank: cycles - boundaries.len(),
                torsion: boundaries.iter().filter(|t| !t.is_one()).cloned().collect(),
            }
        })
        .collect();
    Ok(IntegerHomologyVector { groups })
}
