use std::time::Instant;
use twistkit_core::model::*;
use twistkit_core::scalar::Scalar;
use twistkit_core::series::TruncatedSeries;
use twistkit_core::star::*;
use twistkit_core::twist::Twist;
use twistkit_core::uea::*;

fn main() {
    let order = 6;
    let spec = LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()]);
    let sample = FourierFunction::zero(2, order);
    let assign = ActionAssignment::new(
        &spec,
        vec![
            Derivation::partial(2, 0, &sample),
            Derivation::partial(2, 1, &sample),
        ],
    )
    .unwrap();
    let yx = TensorElement::from_legs(&[
        UEAElement::generator(&spec, 1),
        UEAElement::generator(&spec, 0),
    ])
    .unwrap();
    let xy = TensorElement::from_legs(&[
        UEAElement::generator(&spec, 0),
        UEAElement::generator(&spec, 1),
    ])
    .unwrap();
    let exponent = TruncatedSeries::monomial(
        yx.sub(&xy).unwrap().scale(&(&Scalar::i() * &Scalar::from_ratio(1, 2))),
        1,
        order,
    );
    let t0 = Instant::now();
    let twist = Twist::exponential(&exponent).unwrap();
    let c1 = twist.check_counitality();
    let c2 = twist.check_cocycle();
    println!("twist checks: {:?} ({c1}, {c2})", t0.elapsed());

    let star = StarAlgebra::new(assign, twist).unwrap();
    let basis = FourierFunction::basis(2, order, 2);
    println!("basis size {}", basis.len());

    let t0 = Instant::now();
    let mut triples = Vec::new();
    for f in &basis {
        for g in &basis {
            for h in &basis {
                triples.push((f.clone(), g.clone(), h.clone()));
            }
        }
    }
    println!("built {} triples in {:?}", triples.len(), t0.elapsed());
    let t0 = Instant::now();
    let rep = star.check_associativity(&triples).unwrap();
    println!("assoc check: {:?} -> {rep}", t0.elapsed());
}
