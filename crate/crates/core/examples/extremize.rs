//! Minimal and maximal mutual information on the orbit of a joint spectrum.
//!
//! cargo run --example extremize -- 0.6,0.3,0.1,0 2x2

use qmi_orbit::{extremize, Dims, Spectrum};

fn main() -> qmi_orbit::Result<()> {
    let mut args = std::env::args().skip(1);
    let values: Vec<f64> = args
        .next()
        .unwrap_or_else(|| "0.6,0.3,0.1,0".into())
        .split(',')
        .map(|t| t.trim().parse().expect("spectrum entries are numbers"))
        .collect();
    let dims: Dims = args.next().unwrap_or_else(|| "2x2".into()).parse()?;

    let spectrum = Spectrum::new(values)?;
    let res = extremize(&spectrum, dims)?;
    println!("spectrum        {:?}", spectrum.values());
    println!("I_min           {:.6} bits", res.i_min.bits());
    println!("I_max           {:.6} bits", res.i_max.bits());
    println!("max change      {:.6} bits", res.delta_i_max.bits());
    println!("min tableau     {}", res.minimizer.tableau);
    let (pa, pb) = res.minimizer.marginal_spectra();
    println!("min marginals   A {pa:.4?}  B {pb:.4?}");
    Ok(())
}
