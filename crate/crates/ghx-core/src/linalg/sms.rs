//! The SMS sparse matrix text format: a `rows cols M` header, one
//! 1-indexed `i j v` line per entry, and a `0 0 0` terminator.

use std::fmt::Write;

use super::{LinalgError, SparseIntMatrix};

pub fn sms_write(m: &SparseIntMatrix) -> String {
    let mut s = String::with_capacity(16 + 12 * m.nnz());
    let _ = writeln!(s, "{} {} M", m.rows(), m.cols());
    for (r, c, v) in m.entries() {
        let _ = writeln!(s, "{} {} {}", r + 1, c + 1, v);
    }
    s.push_str("0 0 0\n");
    s
}

pub fn sms_read(text: &str) -> Result<SparseIntMatrix, LinalgError> {
    let bad = |msg: &str| LinalgError::MalformedSms(msg.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 || h[2] != "M" {
        return Err(bad("header must be `<rows> <cols> M`"));
    }
    let rows: usize = h[0].parse().map_err(|_| bad("row count"))?;
    let cols: usize = h[1].parse().map_err(|_| bad("column count"))?;
    let mut entries = Vec::new();
    let mut terminated = false;
    for line in lines {
        if terminated {
            return Err(bad("content after terminator"));
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 3 {
            return Err(bad(line));
        }
        let i: usize = t[0].parse().map_err(|_| bad(line))?;
        let j: usize = t[1].parse().map_err(|_| bad(line))?;
        let v: i64 = t[2].parse().map_err(|_| bad(line))?;
        if i == 0 && j == 0 && v == 0 {
            terminated = true;
            continue;
        }
        if i == 0 || j == 0 {
            return Err(LinalgError::IndexOutOfRange { row: i, col: j, rows, cols });
        }
        entries.push((i - 1, j - 1, v));
    }
    if !terminated {
        return Err(bad("missing `0 0 0` terminator"));
    }
    SparseIntMatrix::new(rows, cols, entries)
}
