//! CSV ingestion.

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use orthant_core::Matrix;

use crate::error::{Error, Result};

/// Which column holds the response.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ResponseColumn {
    #[default]
    Last,
    Name(String),
    /// 1-based.
    Index(usize),
}

impl FromStr for ResponseColumn {
    type Err = std::convert::Infallible;

    /// A positive integer is read as a 1-based index, anything else as a
    /// header name. A header that happens to be numeric still wins when
    /// the column is looked up.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) if i > 0 => ResponseColumn::Index(i),
            _ => ResponseColumn::Name(s.to_string()),
        })
    }
}

impl fmt::Display for ResponseColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResponseColumn::Last => f.write_str("last"),
            ResponseColumn::Name(n) => f.write_str(n),
            ResponseColumn::Index(i) => write!(f, "{i}"),
        }
    }
}

/// Design columns and response as read, before centering or scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct RawData {
    pub x: Matrix,
    pub y: Vec<f64>,
    /// Header names of the design columns, in file order.
    pub predictors: Vec<String>,
    pub response: String,
}

pub fn load_csv(path: &Path, response: &ResponseColumn) -> Result<RawData> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, response)
}

/// Rows are numbered as in the file, so the first data row is row 2.
/// Columns are 1-based.
pub fn read_csv<R: Read>(reader: R, response: &ResponseColumn) -> Result<RawData> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.len() < 2 {
        return Err(Error::Shape(format!("need at least 2 columns, found {}", header.len())));
    }
    let target = locate(&header, response)?;

    let mut x = Vec::new();
    let mut y = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let row = k + 2;
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row,
                col: col + 1,
                message: format!("{:?} in column {:?} is not a number", cell, header[col]),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse { row, col: col + 1, message: format!("{cell:?} is not finite") });
            }
            if col == target {
                y.push(v);
            } else {
                x.push(v);
            }
        }
    }
    if y.len() < 2 {
        return Err(Error::Shape(format!("need at least 2 data rows, found {}", y.len())));
    }
    let p = header.len() - 1;
    Ok(RawData {
        x: Matrix::from_row_major(y.len(), p, x)?,
        y,
        predictors: header.iter().enumerate().filter(|(j, _)| *j != target).map(|(_, h)| h.clone()).collect(),
        response: header[target].clone(),
    })
}

fn locate(header: &[String], response: &ResponseColumn) -> Result<usize> {
    match response {
        ResponseColumn::Last => Ok(header.len() - 1),
        ResponseColumn::Name(name) => {
            header.iter().position(|h| h == name).ok_or_else(|| Error::MissingColumn(name.clone()))
        }
        ResponseColumn::Index(i) => {
            let by_name = header.iter().position(|h| *h == i.to_string());
            match by_name {
                Some(j) => Ok(j),
                None if *i <= header.len() => Ok(i - 1),
                None => Err(Error::MissingColumn(i.to_string())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "a,b,y\n1,2,3\n4,5,6\n";

    #[test]
    fn default_response_is_last() {
        let d = read_csv(SMALL.as_bytes(), &ResponseColumn::Last).unwrap();
        assert_eq!(d.y, vec![3.0, 6.0]);
        assert_eq!(d.x.as_slice(), &[1.0, 2.0, 4.0, 5.0]);
        assert_eq!(d.predictors, ["a", "b"]);
    }

    #[test]
    fn response_by_name_and_index() {
        let d = read_csv(SMALL.as_bytes(), &"a".parse().unwrap()).unwrap();
        assert_eq!(d.y, vec![1.0, 4.0]);
        assert_eq!(d.x.as_slice(), &[2.0, 3.0, 5.0, 6.0]);
        let d = read_csv(SMALL.as_bytes(), &"2".parse().unwrap()).unwrap();
        assert_eq!(d.response, "b");
    }

    #[test]
    fn numeric_header_name_wins_over_index() {
        let d = read_csv("1,2,3\n7,8,9\n1,1,1\n".as_bytes(), &"1".parse().unwrap()).unwrap();
        assert_eq!(d.response, "1");
        assert_eq!(d.y, vec![7.0, 1.0]);
    }

    #[test]
    fn missing_column() {
        let e = read_csv(SMALL.as_bytes(), &"z".parse().unwrap()).unwrap_err();
        assert!(matches!(e, Error::MissingColumn(ref n) if n == "z"));
        let e = read_csv(SMALL.as_bytes(), &ResponseColumn::Index(4)).unwrap_err();
        assert!(matches!(e, Error::MissingColumn(_)));
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let e = read_csv("a,y\n1,2\n3,x\n".as_bytes(), &ResponseColumn::Last).unwrap_err();
        match e {
            Error::Parse { row, col, ref message } => {
                assert_eq!((row, col), (3, 2));
                assert!(message.contains("\"x\""));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(e.exit_code(), 2);
        assert!(read_csv("a,y\n1,\n3,4\n".as_bytes(), &ResponseColumn::Last).is_err());
        assert!(read_csv("a,y\n1,NaN\n3,4\n".as_bytes(), &ResponseColumn::Last).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(read_csv("y\n1\n2\n".as_bytes(), &ResponseColumn::Last), Err(Error::Shape(_))));
        assert!(matches!(read_csv("a,y\n1,2\n".as_bytes(), &ResponseColumn::Last), Err(Error::Shape(_))));
        // Ragged rows are rejected by the reader.
        assert!(matches!(read_csv("a,y\n1,2\n3\n".as_bytes(), &ResponseColumn::Last), Err(Error::Csv(_))));
    }

    #[test]
    fn whitespace_is_trimmed() {
        let d = read_csv("a , y\n 1 , 2\n3,4 \n".as_bytes(), &"y".parse().unwrap()).unwrap();
        assert_eq!(d.y, vec![2.0, 4.0]);
    }
}
