//! Both sides of the counit law for every adaptor between two small lens
//! objects, compared table by table.

use teleo::finset::FinSet;
use teleo::lens::{all_adaptors, lens_compose, lens_counit, lens_dual, lens_id, lens_tensor, LensObject};

fn main() -> teleo::Result<()> {
    let a = LensObject::new(FinSet::range("X", 2), FinSet::range("S", 3));
    let b = LensObject::new(FinSet::range("Y", 3), FinSet::range("R", 2));
    let (ea, eb) = (lens_counit(&a), lens_counit(&b));
    let mut n = 0;
    for f in all_adaptors(&a, &b) {
        let lhs = lens_compose(&lens_tensor(&f, &lens_id(&b.dual())), &eb)?;
        let rhs = lens_compose(&lens_tensor(&lens_id(&a), &lens_dual(&f)?), &ea)?;
        assert_eq!(lhs, rhs);
        n += 1;
    }
    println!("counit law holds for all {n} adaptors {a} → {b}");
    Ok(())
}
