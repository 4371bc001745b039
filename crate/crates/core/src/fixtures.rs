//! The fixture corpus shipped in `fixtures/`, plus the parameterized families.

use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::poly::{parse, parse_poly_file, Polynomial};

pub const MOTZKIN: &str = include_str!("../../../fixtures/motzkin.poly");
pub const ROBINSON: &str = include_str!("../../../fixtures/robinson.poly");
pub const CHOI_LAM_S: &str = include_str!("../../../fixtures/choi_lam_s.poly");
pub const CHOI_LAM_Q: &str = include_str!("../../../fixtures/choi_lam_q.poly");
pub const STENGLE: &str = include_str!("../../../fixtures/stengle.poly");
pub const STENGLE_AFFINE: &str = include_str!("../../../fixtures/stengle_f.poly");
pub const OCTIC: &str = include_str!("../../../fixtures/octic.poly");
pub const HORN: &str = include_str!("../../../fixtures/horn.poly");
pub const M_HALF: &str = include_str!("../../../fixtures/m_half.poly");
pub const M_A1: &str = include_str!("../../../fixtures/m_a1.poly");
pub const MOTZKIN_A_CUBE: &str = include_str!("../../../fixtures/motzkin_a_cube.sos");
pub const HORN_ALT: &str = include_str!("../../../fixtures/horn_alt.sos");

/// Name and text of every `.poly` fixture.
pub const ALL: &[(&str, &str)] = &[
    ("motzkin", MOTZKIN),
    ("robinson", ROBINSON),
    ("choi_lam_s", CHOI_LAM_S),
    ("choi_lam_q", CHOI_LAM_Q),
    ("stengle", STENGLE),
    ("stengle_f", STENGLE_AFFINE),
    ("octic", OCTIC),
    ("horn", HORN),
    ("m_half", M_HALF),
    ("m_a1", M_A1),
];

/// Ternary forms that are nonnegative with isolated real zeros.
pub const TERNARY: &[&str] = &["motzkin", "robinson", "choi_lam_s", "stengle", "octic"];

fn load(text: &str) -> Polynomial {
    parse_poly_file(text).expect("fixture parses").poly
}

pub fn by_name(name: &str) -> Option<Polynomial> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| load(t))
}

pub fn motzkin() -> Polynomial {
    load(MOTZKIN)
}

pub fn robinson() -> Polynomial {
    load(ROBINSON)
}

pub fn choi_lam_s() -> Polynomial {
    load(CHOI_LAM_S)
}

pub fn choi_lam_q() -> Polynomial {
    load(CHOI_LAM_Q)
}

pub fn stengle() -> Polynomial {
    load(STENGLE)
}

pub fn stengle_affine() -> Polynomial {
    load(STENGLE_AFFINE)
}

pub fn octic() -> Polynomial {
    load(OCTIC)
}

pub fn horn() -> Polynomial {
    load(HORN)
}

pub fn m_half() -> Polynomial {
    load(M_HALF)
}

pub fn m_a1() -> Polynomial {
    load(M_A1)
}

const TERNARY_VARS: [&str; 3] = ["X1", "X2", "X3"];

/// (X1² + X2² + X3²)³
pub fn sum_squares_cubed() -> Polynomial {
    parse("X1^2 + X2^2 + X3^2", &TERNARY_VARS).unwrap().pow(3)
}

/// M_a = M + (3 − a)·X1²X2²X3², i.e. the middle coefficient is −a.
pub fn motzkin_a(a: &BigRational) -> Polynomial {
    let base = parse("X1^4*X2^2 + X1^2*X2^4 + X3^6", &TERNARY_VARS).unwrap();
    let mut p = base;
    p.add_term(vec![2, 2, 2], Coeff::from_rational(-a.clone()));
    p
}

/// T_c = c·X1³X3³ + (X2²X3 − X1³ − X1X3²)².
pub fn stengle_c(c: &BigRational) -> Polynomial {
    let sq = parse("X2^2*X3 - X1^3 - X1*X3^2", &TERNARY_VARS).unwrap().pow(2);
    let mut p = sq;
    p.add_term(vec![3, 0, 3], Coeff::from_rational(c.clone()));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn every_fixture_parses() {
        for (name, text) in ALL {
            let p = parse_poly_file(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(p.declared_vars && !p.poly.is_zero(), "{name}");
        }
    }

    #[test]
    fn families_match_fixtures() {
        assert_eq!(motzkin_a(&rat(3, 1)), motzkin());
        assert_eq!(motzkin_a(&rat(1, 1)), m_a1());
        assert_eq!(stengle_c(&rat(1, 1)), stengle());
        let half = motzkin().add(&sum_squares_cubed().scale(&Coeff::from_frac(1, 2)));
        assert_eq!(half, m_half());
    }
}
