//! Divisor classes `a·λ − Σ b_i·δ_i` on the moduli space of stable curves of
//! fixed genus, and the log canonical families built from them.
//!
//! The canonical class of the stack is `13λ − 2δ`. Boundary coefficients are
//! stored densely for `i = 0..=⌊g/2⌋`; lookups above `g/2` fold through
//! `b_i = b_{g−i}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g < 3 {
            return Err(Error::GenusTooSmall(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of boundary divisors, `⌊g/2⌋ + 1`.
    pub fn boundary_count(self) -> usize {
        (self.0 / 2) as usize + 1
    }

    /// Folds an index `0..=g` into `0..=⌊g/2⌋`.
    pub fn fold(self, i: u32) -> Option<usize> {
        match i {
            i if i > self.0 => None,
            i if 2 * i > self.0 => Some((self.0 - i) as usize),
            i => Some(i as usize),
        }
    }
}

impl<'de> Deserialize<'de> for Genus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Genus::new(u32::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which log canonical divisor to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Model {
    /// `K + αδ` on the stack.
    #[serde(rename = "mg")]
    #[value(name = "mg")]
    MgStack,
    /// Pullback of `K + αδ` from the pseudostable space: `b_1 = 11 − 12α`.
    #[serde(rename = "ps")]
    #[value(name = "ps")]
    PsPullback,
    /// The coarse-space divisor whose `Δ_1` coefficient is `(1+α)/2`.
    #[serde(rename = "coarse")]
    #[value(name = "coarse")]
    CoarseDagger,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::MgStack => "mg",
            Model::PsPullback => "ps",
            Model::CoarseDagger => "coarse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    genus: Genus,
    lambda: Rational,
    delta: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(genus: Genus, lambda: Rational, delta: Vec<Rational>) -> Result<Self> {
        if delta.len() != genus.boundary_count() {
            return Err(Error::InvalidArgument(format!(
                "genus {genus} needs {} boundary coefficients, got {}",
                genus.boundary_count(),
                delta.len()
            )));
        }
        Ok(DivisorClass {
            genus,
            lambda,
            delta,
        })
    }

    /// `a·λ − b·δ` with every boundary coefficient equal to `b`.
    pub fn uniform(genus: Genus, lambda: Rational, b: Rational) -> Self {
        DivisorClass {
            genus,
            lambda,
            delta: vec![b; genus.boundary_count()],
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn lambda_coeff(&self) -> &Rational {
        &self.lambda
    }

    pub fn delta_coeffs(&self) -> &[Rational] {
        &self.delta
    }

    /// `b_i` for any `0 <= i <= g`.
    pub fn b(&self, i: u32) -> Option<&Rational> {
        self.genus.fold(i).map(|k| &self.delta[k])
    }

    /// Coefficient `c_i` in `K + Σ c_i·δ_i` form, i.e. `2 − b_i`, when the
    /// λ-coefficient is 13.
    pub fn boundary_weight(&self, i: u32) -> Option<Rational> {
        if self.lambda != int(13) {
            return None;
        }
        self.b(i).map(|b| int(2) - b)
    }

    pub fn scale(&self, k: &Rational) -> DivisorClass {
        DivisorClass {
            genus: self.genus,
            lambda: &self.lambda * k,
            delta: self.delta.iter().map(|b| b * k).collect(),
        }
    }

    /// The scalar `k` with `self = k·other`, if one exists.
    pub fn ratio_to(&self, other: &DivisorClass) -> Option<Rational> {
        if self.genus != other.genus {
            return None;
        }
        let pairs = std::iter::once((&self.lambda, &other.lambda))
            .chain(self.delta.iter().zip(&other.delta));
        let mut k: Option<Rational> = None;
        for (x, y) in pairs.clone() {
            if !y.is_zero() {
                k = Some(x / y);
                break;
            }
        }
        let k = k?;
        pairs.into_iter().all(|(x, y)| *x == y * &k).then_some(k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("divisor class serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorClassRepr {
    g: u32,
    #[serde(with = "rational::as_string")]
    lambda: Rational,
    #[serde(with = "rational::vec_as_string")]
    delta: Vec<Rational>,
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorClassRepr {
            g: self.genus.get(),
            lambda: self.lambda.clone(),
            delta: self.delta.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DivisorClassRepr::deserialize(d)?;
        let genus = Genus::new(r.g).map_err(serde::de::Error::custom)?;
        DivisorClass::new(genus, r.lambda, r.delta).map_err(serde::de::Error::custom)
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DivisorClass::from_json(s)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}λ", rational::format(&self.lambda))?;
        for (i, b) in self.delta.iter().enumerate() {
            if !b.is_zero() {
                let sign = if b.is_negative() { '+' } else { '-' };
                write!(f, " {sign} {}δ{i}", rational::format(&b.abs()))?;
            }
        }
        Ok(())
    }
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if rational::in_unit_interval(alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(rational::format(alpha)))
    }
}

/// `K + αδ` in the chosen model, written as `13λ − Σ b_i·δ_i`.
pub fn log_canonical_divisor(g: Genus, alpha: &Rational, model: Model) -> Result<DivisorClass> {
    check_alpha(alpha)?;
    let b = int(2) - alpha;
    let mut class = DivisorClass::uniform(g, int(13), b.clone());
    match model {
        Model::MgStack => {}
        Model::PsPullback => class.delta[1] = int(11) - int(12) * alpha,
        // K + Σ_{i≠1} αΔ_i + (1+α)/2 Δ_1
        Model::CoarseDagger => class.delta[1] = int(2) - (Rational::one() + alpha) / int(2),
    }
    Ok(class)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Linearization {
    pub n: u32,
    pub class: DivisorClass,
    /// `n ∈ {3, 4}`: the Chow-variety constructions actually exist for these.
    pub certified: bool,
}

/// The GIT linearization `n(g−1)((12n−4)λ − nδ)` of the n-canonical Chow
/// quotient.
pub fn linearization_class(g: Genus, n: u32) -> Result<Linearization> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "linearization needs n >= 3, got {n}"
        )));
    }
    let n_i = n as i64;
    let factor = int(n_i * (g.get() as i64 - 1));
    let class = DivisorClass::uniform(g, int(12 * n_i - 4) * &factor, int(n_i) * &factor);
    Ok(Linearization {
        n,
        class,
        certified: matches!(n, 3 | 4),
    })
}

/// The α with `D` a positive multiple of `13λ − (2−α)δ`, i.e. `2 − 13b/a`.
pub fn proportionality_alpha(d: &DivisorClass) -> Option<Rational> {
    let b = &d.delta[0];
    if d.delta.iter().any(|x| x != b) || !d.lambda.is_positive() {
        return None;
    }
    Some(int(2) - int(13) * b / &d.lambda)
}

/// `(11λ − δ)` and friends: a handy constructor for tests and the CLI.
pub fn lambda_minus_delta(g: Genus, a: i64, b: i64) -> DivisorClass {
    DivisorClass::uniform(g, int(a), int(b))
}
