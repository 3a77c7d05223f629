//! On-disk and on-the-wire forms of a [`CTable`].

use hodge_volumes::rational::{format_fraction, parse_fraction};
use hodge_volumes::{CTable, Rational};
use serde::{Deserialize, Serialize};

pub const DOCUMENT_VERSION: u32 = 1;

/// `{"version":1,"gmax":G,"rows":[{"g":1,"c":["1/12","1/24"]},...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub version: u32,
    pub gmax: u32,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub g: u32,
    pub c: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed table document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported table document version {0}")]
    Version(u32),
    #[error("inconsistent table document: {0}")]
    Shape(String),
    #[error(transparent)]
    Table(#[from] hodge_volumes::Error),
}

impl TableDocument {
    pub fn from_table(table: &CTable) -> Self {
        let rows = table
            .rows()
            .map(|(g, row)| TableRow {
                g,
                c: row.iter().map(format_fraction).collect(),
            })
            .collect();
        Self {
            version: DOCUMENT_VERSION,
            gmax: table.gmax(),
            rows,
        }
    }

    pub fn to_table(&self) -> Result<CTable, DocumentError> {
        if self.version != DOCUMENT_VERSION {
            return Err(DocumentError::Version(self.version));
        }
        if self.rows.len() != self.gmax as usize {
            return Err(DocumentError::Shape(format!(
                "gmax is {} but {} rows are present",
                self.gmax,
                self.rows.len()
            )));
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.g as usize != i + 1 {
                return Err(DocumentError::Shape(format!(
                    "row {i} is labelled g={}",
                    row.g
                )));
            }
            let values = row
                .c
                .iter()
                .map(|s| parse_fraction(s))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(values);
        }
        Ok(CTable::from_rows(rows)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One `g,k,numerator,denominator` line per entry, after a header line.
pub fn render_csv(table: &CTable) -> String {
    let mut out = String::from("g,k,numerator,denominator\n");
    for (g, row) in table.rows() {
        for (k, c) in row.iter().enumerate() {
            out.push_str(&format!("{g},{k},{},{}\n", c.numer(), c.denom()));
        }
    }
    out
}
