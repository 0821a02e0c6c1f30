//! Monomial ideals given by minimal generators: colon, intersection and
//! saturation.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::complex::{Face, VertexLabeling};
use crate::error::{Error, Result};

/// An exponent vector. Ordered by total degree, then lexicographically with
/// the first variable largest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// Builds `∏ x_i^{e_i}` from `(variable, exponent)` pairs; repeated
    /// variables multiply.
    pub fn from_pairs(n: usize, pairs: &[(usize, u32)]) -> Result<Self> {
        let mut m = Monomial::one(n);
        for &(v, e) in pairs {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, len: n });
            }
            m.exponents[v] += e;
        }
        Ok(m)
    }

    /// The square-free monomial with the given support.
    pub fn square_free(n: usize, support: Face) -> Self {
        let mut m = Monomial::one(n);
        for v in support.iter() {
            m.exponents[v] = 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn support(&self) -> Face {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_square_free(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `m / gcd(m, g)`.
    pub fn quotient(&self, g: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&g.exponents)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// Non-zero `(variable, exponent)` pairs.
    pub fn pairs(&self) -> Vec<(usize, u32)> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }

    pub fn format(&self, labels: &VertexLabeling) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.pairs()
            .into_iter()
            .map(|(v, e)| {
                if e == 1 {
                    labels.label(v).to_string()
                } else {
                    format!("{}^{e}", labels.label(v))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal held by its minimal generators, in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ambient: Arc<VertexLabeling>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new<I>(ambient: Arc<VertexLabeling>, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let generators: Vec<Monomial> = generators.into_iter().collect();
        if let Some(g) = generators.iter().find(|g| g.num_vars() != ambient.len()) {
            return Err(Error::Format(format!(
                "monomial in {} variables for a ring in {}",
                g.num_vars(),
                ambient.len()
            )));
        }
        Ok(MonomialIdeal {
            ambient,
            generators: minimalize(generators),
        })
    }

    pub fn zero(ambient: Arc<VertexLabeling>) -> Self {
        MonomialIdeal {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn unit(ambient: Arc<VertexLabeling>) -> Self {
        let n = ambient.len();
        MonomialIdeal {
            ambient,
            generators: vec![Monomial::one(n)],
        }
    }

    pub fn ambient(&self) -> &Arc<VertexLabeling> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn is_square_free(&self) -> bool {
        self.generators.iter().all(Monomial::is_square_free)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    fn same_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::LabelingMismatch)
        }
    }

    /// `(I : ⟨g⟩) = ⟨m / gcd(m, g) | m ∈ gens(I)⟩`.
    pub fn colon_monomial(&self, g: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            ambient: Arc::clone(&self.ambient),
            generators: minimalize(self.generators.iter().map(|m| m.quotient(g)).collect()),
        }
    }

    /// `(I : J) = ⋂_{g ∈ gens(J)} (I : ⟨g⟩)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ambient(other)?;
        let mut gens = other.generators.iter();
        let first = gens.next().ok_or(Error::ColonByZero)?;
        let mut out = self.colon_monomial(first);
        for g in gens {
            out = out.intersect(&self.colon_monomial(g))?;
        }
        Ok(out)
    }

    /// Generated by pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ambient(other)?;
        let lcms = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(MonomialIdeal {
            ambient: Arc::clone(&self.ambient),
            generators: minimalize(lcms),
        })
    }

    /// `I : J^∞`, by iterating the colon until the generators stabilize.
    pub fn saturate(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut current = self.clone();
        loop {
            let next = current.colon(other)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn format(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.format(&self.ambient))
            .collect();
        format!("⟨{}⟩", gens.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}
