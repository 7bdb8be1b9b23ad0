/// Numeric table: the first column is the x axis, the rest are series.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Lines written before the header, without the leading `#`.
    pub metadata: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn value_columns(&self) -> &[String] {
        &self.columns[1..]
    }

    pub fn column(&self, index: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[index])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for m in &self.metadata {
            out.push_str("# ");
            out.push_str(m);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["s".into(), "eq26".into()]);
        t.metadata.push("seed: 1".into());
        t.push_row(vec![1.0, 1.0 / 3.0]);
        t.push_row(vec![2.0, f64::NAN]);
        assert_eq!(t.to_csv(), "# seed: 1\ns,eq26\n1,0.3333333333333333\n2,NaN\n");
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1e-300, -7.0, 1.0 / 3.0, 123456789.125, f64::MIN_POSITIVE] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }
}
