use std::fmt;

use thiserror::Error;

use super::parse::parse_with;
use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("all coordinates are zero")]
    AllZero,
    #[error("coordinates from different quadratic fields")]
    MixedFields,
    #[error("malformed point `{0}`: expected [a:b:c]")]
    Malformed(String),
    #[error("coordinate `{0}` is not a constant")]
    NotConstant(String),
}

/// A point of projective space, scaled so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Coeff>,
    radicand: i64,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Coeff>) -> Result<Self, PointError> {
        let k = coords.iter().rposition(|c| !c.is_zero()).ok_or(PointError::AllZero)?;
        let mut d = 1;
        for c in &coords {
            d = Coeff::common_field(d, c.radicand()).ok_or(PointError::MixedFields)?;
        }
        let s = coords[k].inv();
        let coords: Vec<Coeff> = coords.iter().map(|c| c * &s).collect();
        let radicand = coords.iter().fold(1, |d, c| Coeff::common_field(d, c.radicand()).unwrap());
        Ok(ProjectivePoint { coords, radicand })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self, PointError> {
        ProjectivePoint::new(v.iter().map(|&x| Coeff::from_int(x)).collect())
    }

    pub fn coords(&self) -> &[Coeff] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Radicand of the field holding the coordinates (1 for ℚ).
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.is_real())
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart_index(&self) -> usize {
        self.coords.iter().rposition(|c| !c.is_zero()).unwrap()
    }

    /// The remaining coordinates: the point in the affine chart where the
    /// chart coordinate is set to 1.
    pub fn affine_center(&self) -> Vec<Coeff> {
        let k = self.chart_index();
        self.coords
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// Parse `[a:b:c]` where each entry is a constant expression such as
    /// `-1`, `3/2` or `1 + sqrt(3)`.
    pub fn parse(text: &str) -> Result<Self, PointError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| PointError::Malformed(text.to_string()))?;
        let mut coords = Vec::new();
        for part in inner.split(':') {
            let p = parse_with(part, Vec::new()).map_err(|_| PointError::NotConstant(part.trim().to_string()))?;
            coords.push(p.constant_term());
        }
        if coords.len() < 2 {
            return Err(PointError::Malformed(text.to_string()));
        }
        ProjectivePoint::new(coords)
    }

    /// Deterministic sort key: coordinates compared by their printed form.
    pub fn sort_key(&self) -> Vec<(i8, String)> {
        self.coords
            .iter()
            .map(|c| {
                let s = match c.sign() {
                    Some(std::cmp::Ordering::Less) => -1,
                    Some(std::cmp::Ordering::Equal) => 0,
                    Some(std::cmp::Ordering::Greater) => 1,
                    None => 2,
                };
                (s, c.to_string())
            })
            .collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string().replace(' ', "")).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl serde::Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_last_nonzero() {
        let p = ProjectivePoint::from_ints(&[2, 4, 2]).unwrap();
        assert_eq!(p.to_string(), "[1:2:1]");
        let q = ProjectivePoint::from_ints(&[3, 0, 0]).unwrap();
        assert_eq!(q.chart_index(), 0);
        assert_eq!(q.affine_center(), vec![Coeff::zero(), Coeff::zero()]);
        assert!(matches!(ProjectivePoint::from_ints(&[0, 0, 0]), Err(PointError::AllZero)));
    }

    #[test]
    fn parse_points() {
        let p = ProjectivePoint::parse("[1:0:-sqrt(3)]").unwrap();
        assert_eq!(p.coords()[2], Coeff::one());
        assert_eq!(p.radicand(), 3);
        let back = ProjectivePoint::parse(&p.to_string()).unwrap();
        assert_eq!(back, p);
        assert!(ProjectivePoint::parse("1:2").is_err());
    }
}
