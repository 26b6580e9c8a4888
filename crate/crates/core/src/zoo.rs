//! Standard codes used throughout the tests and the command-line zoo.

use crate::bulk::StabilizerCode;
use crate::error::Result;
use crate::linalg::FreeVector;
use crate::ring::Ring;

fn column(ring: Ring, entries: &[&str]) -> Result<FreeVector> {
    let polys = entries.iter().map(|s| ring.parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(FreeVector::new(ring, polys))
}

fn build(nvars: usize, n: u64, sites: usize, cols: &[&[&str]]) -> Result<StabilizerCode> {
    let ring = Ring::new(nvars, n)?;
    let columns = cols.iter().map(|c| column(ring, c)).collect::<Result<Vec<_>>>()?;
    StabilizerCode::from_columns(ring, sites, &columns)
}

/// Z-only product state, one site per cell.
pub fn trivial(nvars: usize, n: u64) -> Result<StabilizerCode> {
    let ring = Ring::new(nvars, n)?;
    StabilizerCode::from_columns(ring, 1, &[FreeVector::new(ring, vec![ring.zero(), ring.one()])])
}

/// Toric code over `Z_n`: a vertex term and a plaquette term on two edges per cell.
pub fn toric(n: u64) -> Result<StabilizerCode> {
    build(2, n, 2, &[&["1 + x^-1", "1 + y^-1", "0", "0"], &["0", "0", "1 + y", "-1 - x"]])
}

/// Wen's plaquette model: one qubit per site.
pub fn wen() -> Result<StabilizerCode> {
    build(2, 2, 1, &[&["1 + x*y", "x + y"]])
}

/// One qubit per site with the stabilizer `((1+x̄)ȳ + (1+x)y) X + Z`.
pub fn split_example() -> Result<StabilizerCode> {
    build(2, 2, 1, &[&["x^-1*y^-1 + y^-1 + y + x*y", "1"]])
}

/// X-cube on three qubits per cell.
pub fn xcube() -> Result<StabilizerCode> {
    build(
        3,
        2,
        3,
        &[
            &["1 + x^-1 + y^-1 + x^-1*y^-1", "1 + y^-1 + z^-1 + y^-1*z^-1", "1 + x^-1 + z^-1 + x^-1*z^-1", "0", "0", "0"],
            &["0", "0", "0", "1 + z", "1 + x", "0"],
            &["0", "0", "0", "0", "1 + x", "1 + y"],
        ],
    )
}

/// Looks up a zoo entry by name, e.g. `toric`, `toric6`, `xcube`.
pub fn by_name(name: &str) -> Option<Result<StabilizerCode>> {
    Some(match name {
        "trivial" => trivial(2, 2),
        "toric" | "toric2" => toric(2),
        "toric3" => toric(3),
        "toric4" => toric(4),
        "toric6" => toric(6),
        "wen" => wen(),
        "split" => split_example(),
        "xcube" => xcube(),
        _ => return None,
    })
}

pub const NAMES: [&str; 8] = ["trivial", "toric", "toric3", "toric4", "toric6", "wen", "split", "xcube"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_isotropic() {
        for name in NAMES {
            by_name(name).unwrap().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn split_example_spans_heights() {
        let c = split_example().unwrap();
        assert_eq!(c.sigma().get(0, 0).var_range(1), Some((-1, 1)));
    }
}
