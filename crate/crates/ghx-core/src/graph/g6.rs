//! graph6 text encoding, extended with an optional color field per line.

use super::{ColoredGraph, GraphError};

/// graph6 encoding of the underlying uncolored graph (short form, n ≤ 62).
pub fn encode_g6(g: &ColoredGraph) -> String {
    let n = g.vertex_count();
    assert!(n <= 62, "short graph6 form needs n <= 62");
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            k += 1;
            if k == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(((acc << (6 - k)) + 63) as char);
    }
    out
}

/// Decodes a graph6 string; `colors` defaults to all zeros when `None`.
pub fn decode_g6(text: &str, colors: Option<Vec<u8>>) -> Result<ColoredGraph, GraphError> {
    let bytes = text.as_bytes();
    let bad = || GraphError::MalformedG6(text.to_string());
    let first = *bytes.first().ok_or_else(bad)?;
    if !(63..=125).contains(&first) {
        return Err(bad());
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if bytes.len() != 1 + nbits.div_ceil(6) {
        return Err(bad());
    }
    let colors = colors.unwrap_or_else(|| vec![0; n]);
    if colors.len() != n {
        return Err(GraphError::ColorLength { got: colors.len(), expected: n });
    }
    let mut g = ColoredGraph::empty(n);
    for (v, &c) in colors.iter().enumerate() {
        g.set_color(v, c);
    }
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad());
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// One persisted basis line: `<g6>` or `<g6>;<c0>,<c1>,...` when any color
/// is nonzero.
pub fn encode_line(g: &ColoredGraph) -> String {
    let mut s = encode_g6(g);
    if g.colors().iter().any(|&c| c != 0) {
        s.push(';');
        let cs: Vec<String> = g.colors().iter().map(|c| c.to_string()).collect();
        s.push_str(&cs.join(","));
    }
    s
}

/// Inverse of [`encode_line`].
pub fn decode_line(line: &str) -> Result<ColoredGraph, GraphError> {
    let line = line.trim_end();
    match line.split_once(';') {
        None => decode_g6(line, None),
        Some((g6, cs)) => {
            let colors = cs
                .split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| GraphError::MalformedG6(line.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            decode_g6(g6, Some(colors))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let e = ColoredGraph::empty(0);
        assert_eq!(encode_g6(&e), "?");
        assert_eq!(decode_g6("?", None).unwrap(), e);
        let tri = ColoredGraph::uncolored(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(encode_g6(&tri), "Bw");
        assert_eq!(decode_g6("Bw", None).unwrap(), tri);
        let k4 = ColoredGraph::uncolored(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(encode_g6(&k4), "C~");
    }

    #[test]
    fn colored_lines_round_trip() {
        let g = ColoredGraph::from_edges(vec![0, 1, 2], &[(0, 1), (0, 2)]).unwrap();
        let l = encode_line(&g);
        assert_eq!(l, "Bo;0,1,2");
        assert_eq!(decode_line(&l).unwrap(), g);
    }

    #[test]
    fn malformed_rejected() {
        assert!(decode_g6("", None).is_err());
        assert!(decode_g6("C", None).is_err());
        assert!(decode_line("Bw;0,1").is_err());
        assert!(decode_line("Bw;0,x,1").is_err());
    }
}
