//! On-disk JSON formats: stabilizer codes and univariate forms.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use stabmod_core::{zoo, Matrix, QuasiSymplectic1D, Ring, StabilizerCode, SymplecticSpace};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub tags: Vec<String>,
}

/// A code as `2m × g` matrix of polynomials in the text syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub format_version: u32,
    pub modulus: u64,
    pub dimension: usize,
    pub sites: usize,
    pub sigma: Vec<Vec<String>>,
    #[serde(default)]
    pub metadata: Metadata,
    /// Results stored alongside a fixture; always recomputed before use.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
}

/// A univariate Gram matrix for the `witt` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub format_version: u32,
    pub modulus: u64,
    pub gram: Vec<Vec<String>>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_matrix(ring: Ring, rows: &[Vec<String>], path: &str, field: &str) -> CliResult<Matrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            let f = ring.parse(s).map_err(|e| CliError::Field {
                path: path.to_string(),
                field: format!("{field}[{i}][{j}]"),
                message: e.to_string(),
            })?;
            parsed.push(f);
        }
        out.push(parsed);
    }
    Ok(Matrix::from_rows(ring, out)?)
}

fn render(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

impl CodeFile {
    pub fn parse(text: &str, path: &str) -> CliResult<Self> {
        from_json(text, path)
    }

    pub fn from_code(name: &str, code: &StabilizerCode) -> Self {
        CodeFile {
            format_version: FORMAT_VERSION,
            modulus: code.ring().n,
            dimension: code.ring().nvars,
            sites: code.sites(),
            sigma: render(code.sigma()),
            metadata: Metadata { name: name.to_string(), tags: Vec::new() },
            expected: None,
        }
    }

    /// Builds the code, checking shape, syntax and isotropy.
    pub fn to_code(&self, path: &str) -> CliResult<StabilizerCode> {
        let field = |field: &str, message: String| CliError::Field { path: path.to_string(), field: field.into(), message };
        if self.format_version != FORMAT_VERSION {
            return Err(field("format_version", format!("expected {FORMAT_VERSION}, found {}", self.format_version)));
        }
        if self.sigma.len() != 2 * self.sites {
            return Err(field("sigma", format!("expected {} rows for {} sites, found {}", 2 * self.sites, self.sites, self.sigma.len())));
        }
        let cols = self.sigma.first().map_or(0, Vec::len);
        if cols == 0 || self.sigma.iter().any(|r| r.len() != cols) {
            return Err(field("sigma", "rows must be non-empty and of equal length".into()));
        }
        let ring = Ring::new(self.dimension, self.modulus).map_err(|e| field("modulus", e.to_string()))?;
        let sigma = parse_matrix(ring, &self.sigma, path, "sigma")?;
        let space = SymplecticSpace::new(ring, self.sites)?;
        StabilizerCode::new(space, sigma).map_err(|e| field("sigma", e.to_string()))
    }

    /// SHA-256 of the canonical serialization, without the stored expectations.
    pub fn digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.expected = None;
        hex(&Sha256::digest(serde_json::to_vec(&canonical).expect("code files serialize")))
    }
}

impl FormFile {
    pub fn parse(text: &str, path: &str) -> CliResult<Self> {
        from_json(text, path)
    }

    pub fn from_form(name: &str, qs: &QuasiSymplectic1D) -> Self {
        FormFile {
            format_version: FORMAT_VERSION,
            modulus: qs.ring().n,
            gram: render(qs.gram()),
            metadata: Metadata { name: name.to_string(), tags: Vec::new() },
        }
    }

    pub fn to_form(&self, path: &str) -> CliResult<QuasiSymplectic1D> {
        let ring = Ring::new(1, self.modulus).map_err(|e| CliError::Field {
            path: path.to_string(),
            field: "modulus".into(),
            message: e.to_string(),
        })?;
        let gram = parse_matrix(ring, &self.gram, path, "gram")?;
        Ok(QuasiSymplectic1D::new(gram)?)
    }

    pub fn digest(&self) -> String {
        hex(&Sha256::digest(serde_json::to_vec(self).expect("form files serialize")))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A code named either `zoo:NAME` or a path to a JSON code file.
pub fn load_code(location: &str) -> CliResult<(CodeFile, StabilizerCode)> {
    if let Some(name) = location.strip_prefix("zoo:") {
        let code = zoo::by_name(name).ok_or_else(|| CliError::UnknownZoo(name.to_string()))??;
        return Ok((CodeFile::from_code(name, &code), code));
    }
    let text = read(location)?;
    let file = CodeFile::parse(&text, location)?;
    let code = file.to_code(location)?;
    Ok((file, code))
}

pub fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_round_trips_through_text() {
        for name in zoo::NAMES {
            let code = zoo::by_name(name).unwrap().unwrap();
            let file = CodeFile::from_code(name, &code);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back = CodeFile::parse(&text, name).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.to_code(name).unwrap().sigma(), code.sigma(), "{name}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = CodeFile::parse("{\n  \"format_version\": 1,\n  \"modulus\": }", "bad.json").unwrap_err();
        assert!(matches!(err, CliError::Json { line: 3, .. }), "{err}");
        let mut file = CodeFile::from_code("toric", &zoo::toric(2).unwrap());
        file.sigma[1][0] = "1 + y^".into();
        let err = file.to_code("t.json").unwrap_err().to_string();
        assert!(err.contains("sigma[1][0]") && err.contains("column"), "{err}");
    }

    #[test]
    fn broken_pair_is_named_at_load() {
        let mut file = CodeFile::from_code("toric3", &zoo::toric(3).unwrap());
        file.sigma[3][1] = "1 + x".into();
        let err = file.to_code("t.json").unwrap_err().to_string();
        assert!(err.contains("0 and 1"), "{err}");
    }
}
