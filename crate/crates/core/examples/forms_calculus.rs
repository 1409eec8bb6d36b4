//! Polynomial differential forms: d, the Koszul operator, wedge and traces.

use alfeld::polyforms::{format_form, integrate, parse_form, trace, Exp, FormText, KForm, Poly};
use alfeld::simplicial::Simplex;
use alfeld::Rational;

fn mono(e: [u8; 3], c: i64) -> Poly {
    Poly::monomial(3, Exp::from_slice(&e), Rational::from_int(c))
}

fn main() {
    let w = KForm::from_coeffs(3, 1, vec![mono([0, 1, 1], 1), mono([2, 0, 0], 3), mono([1, 1, 1], -2)]).unwrap();
    println!("w =\n{}", format_form(&w));
    println!("dd w = 0: {}", w.d().d().is_zero());

    let origin = vec![Rational::zero(); 3];
    let kdw = w.d().koszul(&origin).unwrap();
    println!("kappa kappa dw = 0: {}", kdw.koszul(&origin).unwrap().is_zero());

    let dx = KForm::basic(3, &[0], Poly::one(3));
    let dy = KForm::basic(3, &[1], Poly::one(3));
    println!("dx ^ dy ^ w =\n{}", format_form(&dx.wedge(&dy).unwrap().wedge(&w).unwrap()));

    let t = Simplex::reference(3);
    let face = t.vertices()[1..].to_vec();
    let tr = trace(&w.d(), &face);
    println!("trace of dw on the slanted face has {} components", tr.coeffs().len());
    println!("integral of xyz over the reference tetrahedron: {}", integrate(&mono([1, 1, 1], 1), &t));

    match parse_form(&format_form(&w)).unwrap() {
        FormText::Single(back) => assert_eq!(back, w),
        FormText::Piecewise(_) => unreachable!(),
    }
}
