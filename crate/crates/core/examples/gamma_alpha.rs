use gpwb::incidence::isomorphic;
use gpwb::kantor::{classical_t2_conic, coset_geometry};
use gpwb::kernel::{compute_kernel, gamma_alpha};

fn main() -> gpwb::Result<()> {
    let kf = classical_t2_conic(3)?;
    let base = coset_geometry(&kf)?;
    let k = compute_kernel(&kf)?;
    for alpha in k.elements().unwrap_or_default() {
        match gamma_alpha(&kf, alpha) {
            Ok(image) => {
                let cg = coset_geometry(&image)?;
                let iso = isomorphic(&cg.geometry, &base.geometry).is_some();
                println!("alpha = {alpha}: family unchanged = {}, isomorphic = {iso}", image == kf);
            }
            Err(e) => println!("alpha = {alpha}: {e}"),
        }
    }
    Ok(())
}
