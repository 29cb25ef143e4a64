use fracpow::parallel::{apply_parallel, materialize};
use fracpow::OperatorSpec;
use fracpow_core::operator::dense_fractional_inverse;
use fracpow_core::{apply_fractional_inverse, build_rational, plan_balanced, FractionalExponent};

#[test]
fn parallel_is_bitwise_serial() {
    let a = FractionalExponent::new(0.6).unwrap();
    let form = build_rational(a, &plan_balanced(80, a).unwrap()).unwrap();
    for spec in ["fd1d:64", "fd2d:9", "diagpow:30:4"] {
        let op = spec.parse::<OperatorSpec>().unwrap().build().unwrap();
        let n = fracpow_core::Operator::dimension(&op);
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 1.3).sin()).collect();
        let s = apply_fractional_inverse(&op, &b, &form).unwrap();
        let p = apply_parallel(&op, &b, &form).unwrap();
        assert_eq!(s, p, "{spec}");
    }
    let op = "fd1d:20".parse::<OperatorSpec>().unwrap().build().unwrap();
    assert_eq!(
        materialize(&op, &form, true).unwrap(),
        dense_fractional_inverse(&op, &form).unwrap()
    );
}
