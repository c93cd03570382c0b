//! One-dimensional boundary strata (F-curves) and their intersection numbers
//! with divisor classes `a·λ − Σ b_i·δ_i`.
//!
//! | family | value |
//! |--------|-------|
//! | A | `a − 12b_0 + b_1` |
//! | B | `b_0` |
//! | C(i) | `b_i` |
//! | D(i) | `2b_0 − b_i` |
//! | E(i,j) | `b_i + b_j − b_{i+j}` |
//! | F(i,j,k,l) | `b_i + b_j + b_k + b_l − b_{i+j} − b_{i+k} − b_{i+l}` |
//!
//! Row A is twelve times the pairing with the elliptic-tail ray.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::divisor::{DivisorClass, Genus};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// Canonical representative of an F-curve family member.
///
/// Ordering is by family letter, then lexicographic in the parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FCurve {
    A,
    B,
    C(u32),
    D(u32),
    E(u32, u32),
    F([u32; 4]),
}

impl FCurve {
    pub fn family(&self) -> char {
        match self {
            FCurve::A => 'A',
            FCurve::B => 'B',
            FCurve::C(_) => 'C',
            FCurve::D(_) => 'D',
            FCurve::E(..) => 'E',
            FCurve::F(_) => 'F',
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            FCurve::A | FCurve::B => vec![],
            FCurve::C(i) | FCurve::D(i) => vec![i],
            FCurve::E(i, j) => vec![i, j],
            FCurve::F(p) => p.to_vec(),
        }
    }

    /// Builds the canonical member from a family letter and raw parameters,
    /// sorting E and F parameters and folding D's `i ↔ g−2−i` symmetry.
    pub fn canonical(family: char, params: &[u32], g: Genus) -> Result<FCurve> {
        let bad =
            || Error::InvalidArgument(format!("bad parameters {params:?} for family {family}"));
        let curve = match (family.to_ascii_uppercase(), params) {
            ('A', []) => FCurve::A,
            ('B', []) => FCurve::B,
            ('C', &[i]) => FCurve::C(i),
            ('D', &[i]) => {
                let other = g.get().checked_sub(2 + i).ok_or_else(bad)?;
                FCurve::D(i.min(other))
            }
            ('E', &[i, j]) => FCurve::E(i.min(j), i.max(j)),
            ('F', &[i, j, k, l]) => {
                let mut p = [i, j, k, l];
                p.sort_unstable();
                FCurve::F(p)
            }
            _ => return Err(bad()),
        };
        curve.validate(g)?;
        Ok(curve)
    }

    /// Checks that this is a canonical representative for genus `g`.
    pub fn validate(&self, g: Genus) -> Result<()> {
        let g = g.get();
        let ok = match *self {
            FCurve::A | FCurve::B => true,
            FCurve::C(i) => i >= 1 && i + 2 <= g,
            FCurve::D(i) => i >= 1 && i + 3 <= g && 2 * i + 2 <= g,
            FCurve::E(i, j) => i >= 1 && i <= j && i + j < g,
            FCurve::F(p) => {
                p[0] >= 1 && p.windows(2).all(|w| w[0] <= w[1]) && p.iter().sum::<u32>() == g
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CurveOutOfRange {
                curve: self.to_string(),
                genus: g,
            })
        }
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.family())
        } else {
            let joined: Vec<String> = p.iter().map(u32::to_string).collect();
            write!(f, "{}({})", self.family(), joined.join(","))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FCurveRepr {
    family: char,
    params: Vec<u32>,
}

impl Serialize for FCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FCurveRepr {
            family: self.family(),
            params: self.params(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FCurveRepr::deserialize(d)?;
        let err = || serde::de::Error::custom(format!("bad F-curve {}{:?}", r.family, r.params));
        Ok(match (r.family, r.params.as_slice()) {
            ('A', []) => FCurve::A,
            ('B', []) => FCurve::B,
            ('C', &[i]) => FCurve::C(i),
            ('D', &[i]) => FCurve::D(i),
            ('E', &[i, j]) => FCurve::E(i, j),
            ('F', &[i, j, k, l]) => FCurve::F([i, j, k, l]),
            _ => return Err(err()),
        })
    }
}

/// All canonical F-curves of `M̄_g`, sorted.
pub fn enumerate_fcurves(g: Genus) -> Vec<FCurve> {
    let g = g.get();
    let mut out = vec![FCurve::A, FCurve::B];
    out.extend((1..=g - 2).map(FCurve::C));
    // i ≤ g−2−i, which also gives i ≤ g−3 once i ≥ 1
    out.extend((1..=(g - 2) / 2).map(FCurve::D));
    for i in 1..g {
        for j in i..g - i {
            out.push(FCurve::E(i, j));
        }
    }
    for i in 1..=g / 4 {
        for j in i..=(g - i) / 3 {
            for k in j..=(g - i - j) / 2 {
                out.push(FCurve::F([i, j, k, g - i - j - k]));
            }
        }
    }
    out
}

/// Intersection of `d` with the F-curve `f`, table-normalized.
pub fn intersect(d: &DivisorClass, f: &FCurve) -> Result<Rational> {
    let genus = d.genus();
    f.validate(genus)?;
    let b = |i: u32| d.b(i).expect("validated index").clone();
    Ok(match *f {
        FCurve::A => d.lambda_coeff() - int(12) * b(0) + b(1),
        FCurve::B => b(0),
        FCurve::C(i) => b(i),
        FCurve::D(i) => int(2) * b(0) - b(i),
        FCurve::E(i, j) => b(i) + b(j) - b(i + j),
        FCurve::F([i, j, k, l]) => b(i) + b(j) + b(k) + b(l) - b(i + j) - b(i + k) - b(i + l),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub curve: FCurve,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

pub fn intersection_table(d: &DivisorClass) -> Vec<IntersectionReport> {
    enumerate_fcurves(d.genus())
        .into_iter()
        .map(|curve| {
            let value = intersect(d, &curve).expect("enumerated curves are in range");
            IntersectionReport { curve, value }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NefVerdict {
    /// Every F-curve pairs non-negatively; the table is the certificate.
    Nef {
        certificate: Vec<IntersectionReport>,
    },
    NotNef {
        witness: FCurve,
        #[serde(with = "rational::as_string")]
        value: Rational,
    },
    /// Some `1 <= i <= ⌊g/2⌋` has `0 != b_i < b_0`, so the criterion says nothing.
    Inapplicable { index: u32, reason: String },
}

impl NefVerdict {
    pub fn is_nef(&self) -> bool {
        matches!(self, NefVerdict::Nef { .. })
    }
}

/// Nefness via the sufficient criterion: if each `b_i` (`i >= 1`) is zero or
/// at least `b_0`, non-negativity on all F-curves implies nef.
pub fn gkm_nef_check(d: &DivisorClass) -> NefVerdict {
    let b0 = &d.delta_coeffs()[0];
    for (i, bi) in d.delta_coeffs().iter().enumerate().skip(1) {
        if *bi != int(0) && bi < b0 {
            return NefVerdict::Inapplicable {
                index: i as u32,
                reason: format!(
                    "b_{i} = {} is neither 0 nor >= b_0 = {}",
                    rational::format(bi),
                    rational::format(b0)
                ),
            };
        }
    }
    let table = intersection_table(d);
    if let Some(r) = table.iter().find(|r| r.value.is_negative()) {
        return NefVerdict::NotNef {
            witness: r.curve,
            value: r.value.clone(),
        };
    }
    NefVerdict::Nef { certificate: table }
}

pub fn table_tsv(rows: &[IntersectionReport]) -> String {
    let mut out = String::from("family\tparams\tvalue\n");
    for r in rows {
        let params: Vec<String> = r.curve.params().iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            r.curve.family(),
            params.join(","),
            rational::format(&r.value)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{log_canonical_divisor, Model};
    use crate::rational::frac;
    use proptest::prelude::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn genus_three_list() {
        let list = enumerate_fcurves(g(3));
        assert_eq!(
            list,
            vec![FCurve::A, FCurve::B, FCurve::C(1), FCurve::E(1, 1)]
        );
    }

    #[test]
    fn genus_four_has_one_f_curve() {
        let fs: Vec<_> = enumerate_fcurves(g(4))
            .into_iter()
            .filter(|c| c.family() == 'F')
            .collect();
        assert_eq!(fs, vec![FCurve::F([1, 1, 1, 1])]);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        for genus in 3..=30 {
            let list = enumerate_fcurves(g(genus));
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            for c in &list {
                c.validate(g(genus)).unwrap();
            }
        }
    }

    #[test]
    fn canonicalization() {
        assert_eq!(FCurve::canonical('D', &[7], g(10)).unwrap(), FCurve::D(1));
        assert_eq!(
            FCurve::canonical('e', &[5, 2], g(10)).unwrap(),
            FCurve::E(2, 5)
        );
        assert_eq!(
            FCurve::canonical('F', &[4, 1, 3, 2], g(10)).unwrap(),
            FCurve::F([1, 2, 3, 4])
        );
        assert!(FCurve::canonical('F', &[1, 1, 1, 1], g(10)).is_err());
        assert!(FCurve::canonical('C', &[9], g(10)).is_err());
        assert!(FCurve::canonical('Q', &[], g(10)).is_err());
    }

    #[test]
    fn elliptic_tail_row_vanishes_at_nine_elevenths() {
        let d = log_canonical_divisor(g(10), &frac(9, 11), Model::MgStack).unwrap();
        assert_eq!(intersect(&d, &FCurve::A).unwrap(), int(0));
    }

    #[test]
    fn d_one_vanishes_at_seven_tenths() {
        let d = log_canonical_divisor(g(10), &frac(7, 10), Model::PsPullback).unwrap();
        assert_eq!(intersect(&d, &FCurve::D(1)).unwrap(), int(0));
    }

    #[test]
    fn lambda_pairs_to_zero_with_b() {
        let d = DivisorClass::uniform(g(10), int(1), int(0));
        assert_eq!(intersect(&d, &FCurve::B).unwrap(), int(0));
    }

    #[test]
    fn out_of_range_curve_is_rejected() {
        let d = DivisorClass::uniform(g(5), int(1), int(0));
        assert!(matches!(
            intersect(&d, &FCurve::E(2, 3)),
            Err(Error::CurveOutOfRange { .. })
        ));
        assert!(intersect(&d, &FCurve::F([1, 1, 1, 1])).is_err());
    }

    #[test]
    fn nef_at_nine_elevenths() {
        let d = log_canonical_divisor(g(10), &frac(9, 11), Model::MgStack).unwrap();
        let NefVerdict::Nef { certificate } = gkm_nef_check(&d) else {
            panic!("expected nef")
        };
        for r in certificate {
            if r.curve == FCurve::A {
                assert_eq!(r.value, int(0));
            } else {
                assert!(r.value.is_positive(), "{}", r.curve);
            }
        }
    }

    #[test]
    fn not_nef_just_below_seven_tenths() {
        let alpha = frac(7, 10) - frac(1, 100);
        let d = log_canonical_divisor(g(10), &alpha, Model::PsPullback).unwrap();
        match gkm_nef_check(&d) {
            NefVerdict::NotNef { witness, value } => {
                assert_eq!(witness, FCurve::D(1));
                assert_eq!(value, int(10) * &alpha - int(7));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lambda_minus_delta_zero_fails_on_a() {
        let mut delta = vec![int(0); 6];
        delta[0] = int(1);
        let d = DivisorClass::new(g(10), int(1), delta).unwrap();
        assert_eq!(
            gkm_nef_check(&d),
            NefVerdict::NotNef {
                witness: FCurve::A,
                value: int(-11)
            }
        );
    }

    #[test]
    fn inapplicable_reports_the_index() {
        let mut delta = vec![int(2); 6];
        delta[3] = int(1);
        let d = DivisorClass::new(g(10), int(13), delta).unwrap();
        assert!(matches!(
            gkm_nef_check(&d),
            NefVerdict::Inapplicable { index: 3, .. }
        ));
    }

    #[test]
    fn tsv_layout() {
        let d = log_canonical_divisor(g(3), &int(1), Model::MgStack).unwrap();
        let tsv = table_tsv(&intersection_table(&d));
        assert_eq!(
            tsv,
            "family\tparams\tvalue\nA\t\t2\nB\t\t1\nC\t1\t1\nE\t1,1\t1\n"
        );
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..40).prop_map(|(p, q)| frac(p, q))
    }

    proptest! {
        #[test]
        fn intersection_respects_index_symmetry(genus in 3u32..24, a in rational(),
                                                bs in proptest::collection::vec(rational(), 13)) {
            let gg = g(genus);
            let d = DivisorClass::new(gg, a, bs.into_iter().take(gg.boundary_count()).collect()).unwrap();
            // an unfolded lookup table covering 0..=g
            let full: Vec<Rational> = (0..=genus).map(|i| {
                let k = if 2 * i > genus { genus - i } else { i };
                d.delta_coeffs()[k as usize].clone()
            }).collect();
            for c in enumerate_fcurves(gg) {
                let bb = |i: u32| full[i as usize].clone();
                let expected = match c {
                    FCurve::A => d.lambda_coeff() - int(12) * bb(0) + bb(1),
                    FCurve::B => bb(0),
                    FCurve::C(i) => bb(genus - i),
                    FCurve::D(i) => int(2) * bb(0) - bb(genus - i),
                    FCurve::E(i, j) => bb(genus - i) + bb(genus - j) - bb(genus - i - j),
                    FCurve::F([i, j, k, l]) => bb(i) + bb(j) + bb(k) + bb(l)
                        - bb(k + l) - bb(j + l) - bb(j + k),
                };
                prop_assert_eq!(intersect(&d, &c).unwrap(), expected);
            }
        }

        #[test]
        fn mg_row_a_is_eleven_alpha_minus_nine(p in 0i64..=1000, genus in 3u32..30) {
            let alpha = frac(p, 1000);
            let d = log_canonical_divisor(g(genus), &alpha, Model::MgStack).unwrap();
            prop_assert_eq!(intersect(&d, &FCurve::A).unwrap(), int(11) * &alpha - int(9));
        }

        #[test]
        fn ps_row_a_vanishes(p in 0i64..=1000, genus in 3u32..30) {
            let d = log_canonical_divisor(g(genus), &frac(p, 1000), Model::PsPullback).unwrap();
            prop_assert_eq!(intersect(&d, &FCurve::A).unwrap(), int(0));
        }

        #[test]
        fn nef_certificate_is_non_negative(genus in 3u32..20, a in rational(), b0 in rational(),
                                           bump in proptest::collection::vec(0i64..4, 10)) {
            let gg = g(genus);
            let delta: Vec<Rational> = (0..gg.boundary_count())
                .map(|i| if i == 0 { b0.clone() } else { b0.clone() + int(bump[i % bump.len()]) })
                .collect();
            let d = DivisorClass::new(gg, a, delta).unwrap();
            if let NefVerdict::Nef { certificate } = gkm_nef_check(&d) {
                for r in &certificate {
                    prop_assert!(!r.value.is_negative());
                    prop_assert_eq!(&intersect(&d, &r.curve).unwrap(), &r.value);
                }
            }
        }
    }
}
