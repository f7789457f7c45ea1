use erarray::Matrix;

/// Left-aligned columns separated by two spaces, no trailing whitespace.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_table(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    table(&rows)
}

pub fn matrix_csv(m: &Matrix) -> String {
    let mut rows = Vec::new();
    for (i, r) in m.rows().iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            rows.push(vec![i.to_string(), j.to_string(), v.to_string()]);
        }
    }
    csv(&["i", "j", "value"], &rows)
}
