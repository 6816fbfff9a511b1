//! Text and SVG pictures of arc presentations. Layouts are fixed so that
//! equal presentations render to equal bytes.

use std::f64::consts::PI;
use std::fmt::Write;

use arcspoke_core::{ArcPresentation, BindingKind};

use crate::error::CliError;

fn nonempty(p: &ArcPresentation) -> Result<(), CliError> {
    if p.pages.is_empty() {
        return Err(CliError::Usage("nothing to render".into()));
    }
    Ok(())
}

fn label(kind: &BindingKind) -> String {
    match kind {
        BindingKind::Vertex(id) => id.to_string(),
        BindingKind::Pass => ".".into(),
    }
}

/// The binding axis as a vertical ruler, top level first, one column per
/// page. `+` marks the ends of a page's arc, `|` its span.
pub fn ascii(p: &ArcPresentation) -> Result<String, CliError> {
    nonempty(p)?;
    let m = p.level_count();
    let lw = m.to_string().len().max(5);
    let nw = p.binding.iter().map(|b| label(&b.kind).len()).max().unwrap_or(0).max(5);
    let cw = p.page_count().to_string().len().max(1) + 1;
    let mut out = String::new();

    let _ = write!(out, "{:>lw$} {:<nw$} |", "level", "point");
    for i in 1..=p.page_count() {
        let _ = write!(out, "{i:>cw$}");
    }
    out.push('\n');
    for b in p.binding.iter().rev() {
        let _ = write!(out, "{:>lw$} {:<nw$} |", b.level, label(&b.kind));
        for &[x, y] in &p.pages {
            let (lo, hi) = (x.min(y), x.max(y));
            let c = if b.level == lo || b.level == hi {
                '+'
            } else if lo < b.level && b.level < hi {
                '|'
            } else {
                ' '
            };
            let _ = write!(out, "{c:>cw$}");
        }
        // keep lines free of trailing blanks
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{} pages, {} levels", p.page_count(), m);
    Ok(out)
}

const SIZE: f64 = 420.0;
const SPOKE: f64 = 150.0;
const LABEL: f64 = 180.0;

/// The spoke diagram: a wheel with one spoke per page at equal angles,
/// clockwise from the top, each end labelled `i,j` by its arc's levels.
pub fn svg(p: &ArcPresentation) -> Result<String, CliError> {
    nonempty(p)?;
    let c = SIZE / 2.0;
    let n = p.page_count();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <circle cx="{c:.2}" cy="{c:.2}" r="4" fill="black"/>"#);
    for (k, [i, j]) in p.pages.iter().enumerate() {
        let t = -PI / 2.0 + 2.0 * PI * k as f64 / n as f64;
        let (dx, dy) = (t.cos(), t.sin());
        let _ = writeln!(
            out,
            r#"  <line x1="{c:.2}" y1="{c:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2"/>"#,
            c + SPOKE * dx,
            c + SPOKE * dy
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="middle">{i},{j}</text>"#,
            c + LABEL * dx,
            c + LABEL * dy
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use arcspoke_core::BindingPoint;

    fn two_page_loop() -> ArcPresentation {
        ArcPresentation {
            binding: vec![
                BindingPoint { level: 1, kind: BindingKind::Vertex("w".into()), degree: Some(2) },
                BindingPoint { level: 2, kind: BindingKind::Pass, degree: Some(2) },
            ],
            pages: vec![[1, 2], [1, 2]],
        }
    }

    #[test]
    fn ascii_ruler() {
        let text = ascii(&two_page_loop()).unwrap();
        assert_eq!(text, "level point | 1 2\n    2 .     | + +\n    1 w     | + +\n2 pages, 2 levels\n");
    }

    #[test]
    fn svg_has_one_spoke_per_page() {
        let s = svg(&two_page_loop()).unwrap();
        assert_eq!(s.matches("<line").count(), 2);
        assert_eq!(s.matches(">1,2</text>").count(), 2);
    }

    #[test]
    fn empty_is_refused() {
        let e = ArcPresentation::default();
        assert_eq!(ascii(&e).unwrap_err().to_string(), "nothing to render");
        assert_eq!(svg(&e).unwrap_err().to_string(), "nothing to render");
    }
}
