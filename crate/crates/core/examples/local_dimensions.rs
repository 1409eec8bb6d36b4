//! Dimensions of the local smooth spaces against their closed forms.

use alfeld::simplicial::AlfeldSplit;
use alfeld::splitspaces::{build_space, dimension_formula, SpaceSpec};

fn main() {
    let split = AlfeldSplit::of_reference(3);
    for s in ["Md:k0:r5", "Md:k1:r4", "Md:k2:r3", "Md:k3:r2", "Mc:k1:r4", "M:k2:r3", "Vc:k2:r3", "Vd:k3:r2", "Md:ring:k0:r5"] {
        let spec: SpaceSpec = s.parse().unwrap();
        let b = build_space(&spec, &split).unwrap();
        let f = dimension_formula(&spec).unwrap();
        println!("{spec:<18} computed {:>4}  closed form {f:>4}", b.dim());
        assert_eq!(b.dim() as i64, f);
    }
}
