//! Plots of snakes in the drawing plane: ASCII for terminals, TikZ for LaTeX.

use std::collections::BTreeMap;
use std::fmt::Write;

use qsnake::error::Result;
use qsnake::lattice::{Algebra, LatticePoint, PlanePoint};
use qsnake::paths::{highest_path, Eps, Path};
use qsnake::snakes::{neighbour_snakes, Snake};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ascii,
    Tikz,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub neighbours: bool,
    pub paths: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Glyph {
    Path,
    Snake,
    NeighbourX,
    NeighbourY,
}

impl Glyph {
    fn ascii(self) -> char {
        match self {
            Glyph::Path => '*',
            Glyph::Snake => 'O',
            Glyph::NeighbourX => 'T',
            Glyph::NeighbourY => 'D',
        }
    }
}

struct Scene {
    alg: Algebra,
    marks: BTreeMap<(i32, i32), Glyph>,
    lines: Vec<Vec<(i32, f64)>>,
}

fn plane(alg: &Algebra, p: LatticePoint) -> Result<PlanePoint> {
    alg.iota(p)
}

fn path_line(p: &Path) -> Vec<(i32, f64)> {
    p.points()
        .iter()
        .map(|&(x, y)| {
            let off = match y.eps {
                Eps::Minus => -0.25,
                Eps::None => 0.0,
                Eps::Plus => 0.25,
            };
            (x, y.base as f64 + off)
        })
        .collect()
}

fn scene(s: &Snake, opts: Options) -> Result<Scene> {
    let alg = *s.algebra();
    let mut marks = BTreeMap::new();
    let mut lines = Vec::new();
    if opts.paths {
        for p in s.points() {
            let path = highest_path(&alg, p.i, p.k)?;
            for &(x, y) in path.points() {
                if y.eps == Eps::None {
                    marks.insert((x, y.base), Glyph::Path);
                }
            }
            lines.push(path_line(&path));
        }
    }
    if opts.neighbours && s.len() >= 2 && s.is_prime() {
        let nb = neighbour_snakes(s)?;
        for (chain, g) in [(&nb.x, Glyph::NeighbourX), (&nb.y, Glyph::NeighbourY)] {
            for &p in chain.points() {
                let q = plane(&alg, p)?;
                marks.insert((q.x, q.y), g);
            }
        }
    }
    for &p in s.points() {
        let q = plane(&alg, p)?;
        marks.insert((q.x, q.y), Glyph::Snake);
    }
    Ok(Scene { alg, marks, lines })
}

fn y_range(sc: &Scene) -> Option<(i32, i32)> {
    let ys = sc
        .marks
        .keys()
        .map(|&(_, y)| y)
        .chain(sc.lines.iter().flatten().map(|&(_, y)| y.floor() as i32));
    let (lo, hi) = ys.fold((i32::MAX, i32::MIN), |(lo, hi), y| (lo.min(y), hi.max(y)));
    (lo <= hi).then_some((lo - 1, hi + 1))
}

fn ascii(sc: &Scene) -> String {
    let w = sc.alg.max_column();
    let mut out = String::from("    ");
    for x in 0..=w {
        let _ = write!(out, "{:>2}", x % 10);
    }
    out.push('\n');
    if let Some((lo, hi)) = y_range(sc) {
        for y in lo..=hi {
            let _ = write!(out, "{y:>4}");
            for x in 0..=w {
                let c = sc.marks.get(&(x, y)).map_or('.', |g| g.ascii());
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
    }
    out
}

fn tikz(sc: &Scene) -> String {
    let w = sc.alg.max_column();
    let (lo, hi) = y_range(sc).unwrap_or((0, 0));
    let mut out = String::new();
    out.push_str("\\documentclass[tikz]{standalone}\n\\usetikzlibrary{shapes.geometric}\n\\begin{document}\n");
    out.push_str("\\begin{tikzpicture}[scale=.35,yscale=-1]\n");
    let _ = writeln!(out, "\\draw[help lines] (0,{lo}) grid ({w},{hi});");
    for x in 0..=w {
        let _ = writeln!(out, "\\node[above] at ({x},{}) {{$\\scriptstyle {x}$}};", lo - 1);
    }
    for line in &sc.lines {
        let pts: Vec<String> = line.iter().map(|(x, y)| format!("({x},{y})")).collect();
        let _ = writeln!(out, "\\draw[thick] {};", pts.join(" -- "));
    }
    for (&(x, y), g) in &sc.marks {
        let node = match g {
            Glyph::Path => continue,
            Glyph::Snake => "circle,draw,fill=black,inner sep=.6mm",
            Glyph::NeighbourX => "regular polygon,regular polygon sides=3,draw,fill=white,inner sep=.3mm",
            Glyph::NeighbourY => "diamond,draw,fill=white,inner sep=.5mm",
        };
        let _ = writeln!(out, "\\node[{node}] at ({x},{y}) {{}};");
    }
    out.push_str("\\end{tikzpicture}\n\\end{document}\n");
    out
}

pub fn diagram(s: &Snake, format: Format, opts: Options) -> Result<String> {
    let sc = scene(s, opts)?;
    Ok(match format {
        Format::Ascii => ascii(&sc),
        Format::Tikz => tikz(&sc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsnake::snakes::{parse_points, validate_snake};

    fn snake(alg: &str, pts: &str) -> Snake {
        let alg: Algebra = alg.parse().unwrap();
        validate_snake(&alg, &parse_points(pts).unwrap()).unwrap()
    }

    fn glyph_at(grid: &str, x: i32, y: i32) -> char {
        let row = grid.lines().find(|l| l[..4].trim() == y.to_string()).unwrap();
        row.chars().nth(4 + 2 * x as usize + 1).unwrap()
    }

    #[test]
    fn b2_wrapping_triple() {
        let g = diagram(&snake("B2", "(1,0),(2,5),(1,10)"), Format::Ascii, Options::default()).unwrap();
        assert_eq!(glyph_at(&g, 2, 0), 'O');
        assert_eq!(glyph_at(&g, 3, 5), 'O');
        assert_eq!(glyph_at(&g, 4, 10), 'O');
        assert_eq!(g.matches('O').count(), 3);
    }

    #[test]
    fn empty_snake() {
        let g = diagram(&Snake::empty(&Algebra::a(3)), Format::Ascii, Options::default()).unwrap();
        assert_eq!(g.lines().count(), 1);
    }

    #[test]
    fn neighbour_glyphs() {
        let s = snake("A3", "(1,0),(2,3),(1,6)");
        let g = diagram(&s, Format::Ascii, Options { neighbours: true, paths: false }).unwrap();
        assert_eq!(g.matches('O').count(), 3);
        assert!(g.contains('T') || g.contains('D'));
        let t = diagram(&s, Format::Tikz, Options { neighbours: true, paths: true }).unwrap();
        assert!(t.starts_with("\\documentclass") && t.trim_end().ends_with("\\end{document}"));
        assert!(t.contains("\\draw[thick]"));
    }
}
