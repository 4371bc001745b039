use num_rational::BigRational;
use stubborn_core::coeff::rat;
use stubborn_core::fixtures;
use stubborn_core::stubborn::{certify_stubborn, StubbornOptions, StubbornVerdict};
use stubborn_core::zeros::Completeness;

fn certify(name: &str) -> stubborn_core::stubborn::StubbornnessCertificate {
    let p = fixtures::by_name(name).unwrap();
    certify_stubborn(&p, &StubbornOptions::default()).unwrap()
}

fn sorted(values: Vec<Option<BigRational>>) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = values.into_iter().map(|x| x.expect("resolved")).collect();
    v.sort();
    v
}

#[test]
fn robinson_has_ten_round_zeros() {
    let c = certify("robinson");
    assert_eq!(c.zeros.len(), 10);
    assert!(c.zeros.iter().all(|z| z.round));
    assert_eq!(c.total, rat(10, 1));
    assert_eq!(c.verdict, StubbornVerdict::Stubborn);
    assert_eq!(c.completeness, Completeness::Complete);
}

#[test]
fn choi_lam_s_total_ten() {
    let c = certify("choi_lam_s");
    assert_eq!(c.total, rat(10, 1));
    assert_eq!(c.verdict, StubbornVerdict::Stubborn);
}

#[test]
fn octic_values() {
    let c = certify("octic");
    assert_eq!(c.degree, 8);
    assert_eq!(c.threshold, rat(16, 1));
    assert_eq!(c.total, rat(17, 1));
    assert_eq!(c.delta_total, Some(21));
    let ones = vec![rat(1, 1); 5];
    let mut want = ones;
    want.extend([rat(6, 1), rat(6, 1)]);
    assert_eq!(sorted(c.delta_sos_values()), want);
    assert!(c.is_stubborn());
}

#[test]
fn stengle_zero_set() {
    let c = certify("stengle");
    let pts: Vec<String> = c.zeros.iter().map(|z| z.point.to_string()).collect();
    assert_eq!(pts.len(), 2);
    assert!(pts.contains(&"[0:0:1]".to_string()) && pts.contains(&"[0:1:0]".to_string()));
    assert_eq!(c.delta_total, Some(9));
}
