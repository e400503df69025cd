//! Plain CSV tables with `#`-prefixed metadata lines.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// System a table was computed for, carried as `# d=2,L=4,delta=1,omega=0.5`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub d: usize,
    /// Linear size, or extents joined by `x` for rectangular clusters.
    pub l: String,
    pub delta: f64,
    pub omega: Option<f64>,
}

impl TableMeta {
    /// Same lattice and anisotropy; the field is not compared.
    pub fn same_system(&self, other: &TableMeta) -> bool {
        self.d == other.d && self.l == other.l && self.delta == other.delta
    }
}

impl fmt::Display for TableMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={},L={},delta={}", self.d, self.l, self.delta)?;
        if let Some(o) = self.omega {
            write!(f, ",omega={o}")?;
        }
        Ok(())
    }
}

impl FromStr for TableMeta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut d, mut l, mut delta, mut omega) = (None, None, None, None);
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Table(format!("malformed metadata entry '{part}'")))?;
            let value = value.trim();
            let bad = || Error::Table(format!("bad metadata value '{part}'"));
            match key.trim() {
                "d" => d = Some(value.parse().map_err(|_| bad())?),
                "L" => l = Some(value.to_string()),
                "delta" => delta = Some(value.parse().map_err(|_| bad())?),
                "omega" => omega = Some(value.parse().map_err(|_| bad())?),
                _ => {}
            }
        }
        match (d, l, delta) {
            (Some(d), Some(l), Some(delta)) => Ok(Self { d, l, delta, omega }),
            _ => Err(Error::Table(format!("metadata '{s}' needs d, L and delta"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    /// Comment lines without the leading `#` and surrounding whitespace.
    pub comments: Vec<String>,
    pub headers: Vec<String>,
    pub records: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            records: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let comments = text
            .lines()
            .filter_map(|l| l.trim_start().strip_prefix('#'))
            .map(|c| c.trim().to_string())
            .collect();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.iter().map(str::to_string).collect();
        let records = reader
            .records()
            .map(|r| r.map(|r| r.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self {
            comments,
            headers,
            records,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// First comment line that parses as [`TableMeta`].
    pub fn meta(&self) -> Option<TableMeta> {
        self.comments.iter().find_map(|c| c.parse().ok())
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Table(format!("missing column '{name}'")))
    }

    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>> {
        let c = self.column_index(name)?;
        self.records
            .iter()
            .enumerate()
            .map(|(r, rec)| {
                rec.get(c)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Table(format!("row {}: bad value in column '{name}'", r + 1)))
            })
            .collect()
    }

    pub fn push_row(&mut self, values: impl IntoIterator<Item = f64>) {
        self.records.push(values.into_iter().map(format_f64).collect());
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.records {
            w.write_record(r)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Table(format!("csv flush failed: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    /// JSON mirror: comments plus one object per row, numbers kept numeric.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|r| {
                let obj = self
                    .headers
                    .iter()
                    .zip(r)
                    .map(|(h, v)| {
                        let val = v
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .and_then(serde_json::Number::from_f64)
                            .map(serde_json::Value::Number)
                            .unwrap_or_else(|| serde_json::Value::String(v.clone()));
                        (h.clone(), val)
                    })
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "comments": self.comments, "rows": rows })
    }
}

/// Shortest representation that parses back to the same value, switching to
/// exponent notation for very large or small magnitudes.
pub fn format_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Write through a temporary file in the target directory and rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(result?)
}
