//! Sampled observables with run metadata.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Sorted sample times plus named observable columns and a metadata block.
///
/// Metadata carries the full parameter echo of the run that produced the
/// series (parameters, numeric controls, accumulated error bounds, regime
/// classification) as flat string key/value pairs.
#[derive(Debug, Clone)]
pub struct TimeSeries<T: Scalar> {
    times: Vec<T>,
    columns: Vec<(String, Vec<T>)>,
    pub metadata: BTreeMap<String, String>,
}

impl<T: Scalar> TimeSeries<T> {
    /// Empty series with the given column names.
    pub fn new(column_names: &[&str]) -> Self {
        TimeSeries {
            times: Vec::new(),
            columns: column_names
                .iter()
                .map(|n| (n.to_string(), Vec::new()))
                .collect(),
            metadata: BTreeMap::new(),
        }
    }

    /// Append one sample. Times must arrive strictly increasing and the row
    /// must match the column count.
    pub fn push(&mut self, t: T, row: &[T]) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if t <= last {
                return Err(Error::InvalidParams(format!(
                    "sample times must be strictly increasing (got {t:?} after {last:?})"
                )));
            }
        }
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParams(format!(
                "row has {} entries, series has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.times.push(t);
        for (col, &v) in self.columns.iter_mut().zip(row) {
            col.1.push(v);
        }
        Ok(())
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Column by name.
    pub fn column(&self, name: &str) -> Option<&[T]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_times() {
        let mut ts = TimeSeries::<f64>::new(&["a"]);
        ts.push(0.0, &[1.0]).unwrap();
        ts.push(1.0, &[2.0]).unwrap();
        assert!(ts.push(1.0, &[3.0]).is_err());
    }

    #[test]
    fn rejects_ragged_rows() {
        let mut ts = TimeSeries::<f64>::new(&["a", "b"]);
        assert!(ts.push(0.0, &[1.0]).is_err());
    }

    #[test]
    fn column_lookup() {
        let mut ts = TimeSeries::<f64>::new(&["n_s", "n_r"]);
        ts.push(0.0, &[1.0, 0.0]).unwrap();
        assert_eq!(ts.column("n_r"), Some(&[0.0][..]));
        assert_eq!(ts.column("missing"), None);
    }
}
