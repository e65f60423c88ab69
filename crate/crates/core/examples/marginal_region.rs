//! Rasterize the two-qubit marginal region for the four reference spectra
//! and write CSV plus marker JSON into a directory.
//!
//! cargo run --example marginal_region -- out/

use std::path::PathBuf;

use qmi_orbit::marginal2q::MarginalRegion;
use qmi_orbit::Spectrum;

fn main() -> qmi_orbit::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "region-panels".into()));
    std::fs::create_dir_all(&dir)?;
    let panels: [(&str, [f64; 4], Option<f64>); 4] = [
        ("a", [1.0, 0.0, 0.0, 0.0], None),
        ("b", [0.8, 0.2, 0.0, 0.0], None),
        ("c", [0.5, 0.5, 0.0, 0.0], None),
        ("d", [0.6, 0.3, 0.1, 0.0], Some(0.5)),
    ];
    for (name, sp, energy) in panels {
        let region = MarginalRegion::new(Spectrum::new(sp.to_vec())?, energy)?;
        let raster = region.rasterize(101)?;
        std::fs::write(dir.join(format!("panel_{name}.csv")), raster.to_csv())?;
        std::fs::write(dir.join(format!("panel_{name}_markers.json")), serde_json::to_string_pretty(&raster.markers)?)?;
        println!(
            "panel {name}: {:>5} of {} cells inside, markers {:?}",
            raster.inside_points().count(),
            101 * 101,
            raster.markers
        );
    }
    println!("written to {}", dir.display());
    Ok(())
}
