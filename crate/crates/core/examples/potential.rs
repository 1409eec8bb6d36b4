//! Potentials of closed piecewise forms in the boundary-vanishing spaces.

use alfeld::polyforms::{format_piecewise, Exp, KForm, PiecewiseKForm, Poly};
use alfeld::simplicial::AlfeldSplit;
use alfeld::splitspaces::{build_space, find_potential, SpaceSpec};
use alfeld::Rational;

fn main() {
    let split = AlfeldSplit::of_reference(3);
    let target: SpaceSpec = "Md:ring:k0:r5".parse().unwrap();
    let space = build_space(&target, &split).unwrap();
    // d of a member is closed; its potential is recovered up to the kernel of d.
    let w: PiecewiseKForm = space.element(0).d();
    let rho = find_potential(&w, &target, &split).unwrap();
    assert_eq!(rho.d(), w);
    println!("potential found in {target}; d rho = w exactly; member: {}", space.contains(&rho));

    let not_closed = PiecewiseKForm::uniform(&KForm::basic(3, &[0], Poly::monomial(3, Exp::from_slice(&[0, 1, 0]), Rational::one())), 4);
    println!("y dx: {}", find_potential(&not_closed, &"Md:k0:r3".parse().unwrap(), &split).unwrap_err());
    println!("{}", format_piecewise(&rho).lines().take(3).collect::<Vec<_>>().join("\n"));
}
