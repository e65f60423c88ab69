//! Haar-sample the unitary orbit and check the samples stay between the
//! closed-form extremes.

use qmi_orbit::extremize::sample_orbit_qmi;
use qmi_orbit::{extremize, Dims, Spectrum};

fn main() -> qmi_orbit::Result<()> {
    let cases = [
        (vec![0.4, 0.3, 0.2, 0.1], Dims::qubits()),
        (vec![0.3, 0.2, 0.15, 0.1, 0.08, 0.07, 0.05, 0.03, 0.02], Dims::new(3, 3)?),
    ];
    for (values, dims) in cases {
        let spectrum = Spectrum::new(values)?;
        let res = extremize(&spectrum, dims)?;
        let qs: Vec<f64> = sample_orbit_qmi(&spectrum, dims, 10_000, 0)?.iter().map(|s| s.qmi.bits()).collect();
        let lo = qs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = qs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "{dims}: closed form [{:.5}, {:.5}], sampled [{lo:.5}, {hi:.5}]",
            res.i_min.bits(),
            res.i_max.bits()
        );
    }
    Ok(())
}
