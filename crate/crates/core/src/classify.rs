//! Point classification by the Dupin indicatrix `k1 x² + k2 y² + k3 z² = ±1`.
//!
//! Only the signs of the principal curvatures matter, so the class is a
//! function of how many are positive, negative and (within `eps_k`) zero.
//!
//! | signs (+, −, 0)      | class                |
//! |----------------------|----------------------|
//! | (3,0,0), (0,3,0)     | ellipsoidal          |
//! | (2,1,0), (1,2,0)     | hyperboloidal        |
//! | one zero, rest alike | elliptic cylinder    |
//! | one zero, rest mixed | hyperbolic cylinder  |
//! | two zeros            | planar pair          |
//! | three zeros          | flat                 |
//!
//! "Planar pair" names the two-zero case, whose indicatrix `k z² = ±1` is a
//! pair of parallel hyperplanes; it is this crate's label, not standard
//! terminology.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Ellipsoidal,
    Hyperboloidal,
    EllipticCylinder,
    HyperbolicCylinder,
    PlanarPair,
    Flat,
}

impl PointClass {
    pub const ALL: [PointClass; 6] = [
        PointClass::Ellipsoidal,
        PointClass::Hyperboloidal,
        PointClass::EllipticCylinder,
        PointClass::HyperbolicCylinder,
        PointClass::PlanarPair,
        PointClass::Flat,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Ellipsoidal => "ellipsoidal",
            PointClass::Hyperboloidal => "hyperboloidal",
            PointClass::EllipticCylinder => "elliptic_cylinder",
            PointClass::HyperbolicCylinder => "hyperbolic_cylinder",
            PointClass::PlanarPair => "planar_pair",
            PointClass::Flat => "flat",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PointClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PointClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown point class `{s}`"))
    }
}

/// Counts of positive, negative and zero principal curvatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern {
    pub positive: u8,
    pub negative: u8,
    pub zero: u8,
}

impl SignPattern {
    pub fn of(k: [f64; 3], eps_k: f64) -> Self {
        let mut p = SignPattern {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for x in k {
            if x.abs() <= eps_k {
                p.zero += 1;
            } else if x > 0.0 {
                p.positive += 1;
            } else {
                p.negative += 1;
            }
        }
        p
    }

    pub fn class(self) -> PointClass {
        match (self.positive, self.negative, self.zero) {
            (_, _, 3) => PointClass::Flat,
            (_, _, 2) => PointClass::PlanarPair,
            (2, 0, 1) | (0, 2, 1) => PointClass::EllipticCylinder,
            (_, _, 1) => PointClass::HyperbolicCylinder,
            (3, 0, 0) | (0, 3, 0) => PointClass::Ellipsoidal,
            _ => PointClass::Hyperboloidal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub class: PointClass,
    pub pattern: SignPattern,
}

/// Classify a point from its principal curvatures; `|k_i| ≤ eps_k` counts as zero.
pub fn classify_point(k: [f64; 3], eps_k: f64) -> Classification {
    let pattern = SignPattern::of(k, eps_k);
    Classification {
        class: pattern.class(),
        pattern,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn class(k: [f64; 3]) -> PointClass {
        classify_point(k, 1e-8).class
    }

    #[test]
    fn case_table() {
        assert_eq!(class([1.0, 1.0, 1.0]), PointClass::Ellipsoidal);
        assert_eq!(class([-1.0, -2.0, -0.5]), PointClass::Ellipsoidal);
        assert_eq!(class([1.0, -1.0, -1.0]), PointClass::Hyperboloidal);
        assert_eq!(class([1.0, 1.0, -1.0]), PointClass::Hyperboloidal);
        assert_eq!(class([FRAC_1_SQRT_2, 0.0, 0.0]), PointClass::PlanarPair);
        assert_eq!(class([0.0, 0.0, 0.0]), PointClass::Flat);
        assert_eq!(class([2.0, 3.0, 0.0]), PointClass::EllipticCylinder);
        assert_eq!(class([-2.0, 0.0, -3.0]), PointClass::EllipticCylinder);
        assert_eq!(class([2.0, -3.0, 0.0]), PointClass::HyperbolicCylinder);
        assert_eq!(class([1e-9, -1e-9, 5e-9]), PointClass::Flat);
    }

    #[test]
    fn pattern_detail() {
        let c = classify_point([1.0, -2.0, -3.0], 1e-8);
        assert_eq!(
            c.pattern,
            SignPattern {
                positive: 1,
                negative: 2,
                zero: 0
            }
        );
    }

    #[test]
    fn names_round_trip() {
        for c in PointClass::ALL {
            assert_eq!(c.as_str().parse::<PointClass>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
        assert!("saddle".parse::<PointClass>().is_err());
    }

    fn curvature() -> impl Strategy<Value = f64> {
        prop_oneof![Just(0.0), -10.0f64..10.0]
    }

    proptest! {
        #[test]
        fn counts_sum_to_three(k in prop::array::uniform3(curvature()), eps in 1e-10f64..1e-2) {
            let p = classify_point(k, eps).pattern;
            prop_assert_eq!(p.positive + p.negative + p.zero, 3);
        }

        #[test]
        fn scale_invariant(k in prop::array::uniform3(curvature()), eps in 1e-10f64..1e-2, c in 1e-3f64..1e3) {
            prop_assert_eq!(classify_point(k, eps).class, classify_point(k.map(|x| c * x), c * eps).class);
        }

        #[test]
        fn sign_flip_invariant(k in prop::array::uniform3(curvature()), eps in 1e-10f64..1e-2) {
            prop_assert_eq!(classify_point(k, eps).class, classify_point(k.map(|x| -x), eps).class);
        }

        #[test]
        fn nonzero_curvatures_give_quadric_classes(k in prop::array::uniform3(-10.0f64..10.0)) {
            prop_assume!(k.iter().all(|x| x.abs() > 1e-6));
            let c = classify_point(k, 1e-8).class;
            prop_assert!(matches!(c, PointClass::Ellipsoidal | PointClass::Hyperboloidal));
        }
    }
}
