use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::json;

use super::rat::{cmp_rat, to_decimal, Rat};

/// Which density a [`BoundsResult`] encloses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Z2,
    Z3,
    /// The closed-form bounds for `Z_n`.
    ZnGeneric(u32),
    /// Nested-sum upper bound for `Z_n` over the closed-form lower bound.
    ZnUpper(u32),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Z2 => f.write_str("z2"),
            Target::Z3 => f.write_str("z3"),
            Target::ZnGeneric(n) => write!(f, "z{n}-generic"),
            Target::ZnUpper(n) => write!(f, "z{n}-upper"),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Truncation record. For `Z_3`, `N` caps the context length and the series
/// stop at index `2M` / `2M + 1`; for `Z_2` only `M` is set and holds the
/// last series index used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub m: Option<usize>,
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Params", 2)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("M", &self.m)?;
        st.end()
    }
}

/// An exact enclosure `lower <= value <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsResult {
    pub target: Target,
    pub q: u32,
    pub params: Params,
    pub lower: Rat,
    pub upper: Rat,
}

impl BoundsResult {
    pub fn contains(&self, x: &Rat) -> bool {
        cmp_rat(&self.lower, x).is_le() && cmp_rat(x, &self.upper).is_le()
    }

    /// `self` lies strictly inside `outer`.
    pub fn strictly_inside(&self, outer: &BoundsResult) -> bool {
        cmp_rat(&outer.lower, &self.lower).is_lt() && cmp_rat(&self.upper, &outer.upper).is_lt()
    }

    /// `self` lies inside `outer`, endpoints allowed to touch.
    pub fn inside(&self, outer: &BoundsResult) -> bool {
        cmp_rat(&outer.lower, &self.lower).is_le() && cmp_rat(&self.upper, &outer.upper).is_le()
    }

    /// Both endpoints rounded half-even to `digits` places.
    pub fn decimals(&self, digits: u32) -> (String, String) {
        (to_decimal(&self.lower, digits), to_decimal(&self.upper, digits))
    }

    /// The common rounding of both endpoints, when they agree.
    pub fn rounded(&self, digits: u32) -> Option<String> {
        let (lo, hi) = self.decimals(digits);
        (lo == hi).then_some(lo)
    }

    pub fn to_json(&self, digits: u32) -> serde_json::Value {
        let (lo, hi) = self.decimals(digits);
        json!({
            "target": self.target,
            "q": self.q,
            "params": self.params,
            "lower": self.lower.to_string(),
            "upper": self.upper.to_string(),
            "decimal": { "lower": lo, "upper": hi, "digits": digits },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let b = BoundsResult {
            target: Target::Z3,
            q: 2,
            params: Params { n: Some(8), m: Some(2) },
            lower: Rat::new(1.into(), 3.into()),
            upper: Rat::new(1.into(), 2.into()),
        };
        let v = b.to_json(3);
        assert_eq!(v["target"], "z3");
        assert_eq!(v["params"]["N"], 8);
        assert_eq!(v["lower"], "1/3");
        assert_eq!(v["decimal"]["upper"], "0.500");
        assert_eq!(v["decimal"]["digits"], 3);
        assert!(b.contains(&Rat::new(2.into(), 5.into())));
        assert_eq!(b.rounded(0), Some("0".into()));
        assert_eq!(b.rounded(1), None);
    }
}
