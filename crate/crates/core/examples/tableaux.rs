//! Enumerate the candidate tableaux for a few rectangles and compare counts
//! with the hook-length formula.

use qmi_orbit::tableau::{enumerate_tableaux, hook_length_count};
use qmi_orbit::Dims;

fn main() -> qmi_orbit::Result<()> {
    for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (4, 4)] {
        let dims = Dims::new(a, b)?;
        let ts = enumerate_tableaux(dims)?;
        let note = if a == b { " (transpose pairs merged)" } else { "" };
        println!("{dims}: {} tableaux, hook length {}{note}", ts.len(), hook_length_count(dims));
    }
    for t in enumerate_tableaux(Dims::new(2, 3)?)? {
        println!("  {t}");
    }
    Ok(())
}
