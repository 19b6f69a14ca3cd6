//! The plain-text spine file format and the move-log format.
//!
//! ```text
//! spine 1
//! tets 2
//! 0.0 -> 1.3 : 012
//! ...
//! branching 0:01 0:02 1:23
//! orientation +-
//! ```
//!
//! Parsing is strict (single spaces, no comments, trailing newline) so that
//! serializing a parsed file reproduces it byte for byte.

use crate::error::{Error, Result};
use crate::spine::BranchedSpine;
use crate::triangulation::{face_corners, Glue, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingLine {
    pub tet: usize,
    pub face: u8,
    pub other_tet: usize,
    pub other_face: u8,
    /// Images of the corners of `face`, taken in ascending order.
    pub word: [u8; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineFile {
    pub tets: usize,
    pub gluings: Vec<GluingLine>,
    /// One oriented representative edge `(tet, tail, head)` per edge class.
    pub branching: Vec<(usize, u8, u8)>,
    pub orientation: Option<Vec<i8>>,
    branching_line: usize,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn digit(c: char) -> Option<u8> {
    c.to_digit(10).filter(|&d| d < 4).map(|d| d as u8)
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(syntax(line, format!("expected {what}, found `{s}`")));
    }
    s.parse().map_err(|_| syntax(line, format!("{what} out of range: `{s}`")))
}

fn parse_tet_face(s: &str, line: usize, tets: usize) -> Result<(usize, u8)> {
    let (t, f) = s.split_once('.').ok_or_else(|| syntax(line, format!("expected TET.FACE, found `{s}`")))?;
    let t = parse_usize(t, line, "tetrahedron index")?;
    if t >= tets {
        return Err(syntax(line, format!("tetrahedron {t} out of range")));
    }
    let mut fc = f.chars();
    let face = match (fc.next().and_then(digit), fc.next()) {
        (Some(d), None) => d,
        _ => return Err(syntax(line, format!("face index must be 0..3, found `{f}`"))),
    };
    Ok((t, face))
}

impl SpineFile {
    pub fn parse(text: &str) -> Result<SpineFile> {
        if !text.ends_with('\n') {
            return Err(syntax(text.lines().count().max(1), "file must end with a newline"));
        }
        let lines: Vec<&str> = text[..text.len() - 1].split('\n').collect();
        let mut idx = 0;
        fn take<'a>(lines: &[&'a str], idx: &mut usize, expect: &str) -> Result<(usize, &'a str)> {
            let l = lines
                .get(*idx)
                .copied()
                .ok_or_else(|| syntax(*idx + 1, format!("unexpected end of file, expected {expect}")))?;
            *idx += 1;
            Ok((*idx, l))
        }
        let mut next = |expect: &str| take(&lines, &mut idx, expect);
        let (ln, header) = next("header")?;
        if header != "spine 1" {
            return Err(syntax(ln, "expected `spine 1`"));
        }
        let (ln, tl) = next("tets line")?;
        let tets = match tl.strip_prefix("tets ") {
            Some(n) => parse_usize(n, ln, "tetrahedron count")?,
            None => return Err(syntax(ln, "expected `tets N`")),
        };
        if tets == 0 {
            return Err(syntax(ln, "tetrahedron count must be positive"));
        }
        let mut gluings = Vec::new();
        let (branching_line, branching_text) = loop {
            let (ln, l) = next("gluing or branching line")?;
            if let Some(rest) = l.strip_prefix("branching") {
                break (ln, rest);
            }
            let parts: Vec<&str> = l.split(' ').collect();
            if parts.len() != 5 || parts[1] != "->" || parts[3] != ":" {
                return Err(syntax(ln, "expected `T.F -> T.F : PERM`"));
            }
            let (tet, face) = parse_tet_face(parts[0], ln, tets)?;
            let (other_tet, other_face) = parse_tet_face(parts[2], ln, tets)?;
            let w: Vec<char> = parts[4].chars().collect();
            let word = match w.as_slice() {
                [a, b, c] => match (digit(*a), digit(*b), digit(*c)) {
                    (Some(a), Some(b), Some(c)) if a != b && b != c && a != c && ![a, b, c].contains(&other_face) => [a, b, c],
                    _ => return Err(syntax(ln, format!("malformed permutation `{}`", parts[4]))),
                },
                _ => return Err(syntax(ln, format!("malformed permutation `{}`", parts[4]))),
            };
            gluings.push(GluingLine { tet, face, other_tet, other_face, word });
        };
        let mut branching = Vec::new();
        if !branching_text.is_empty() {
            let Some(body) = branching_text.strip_prefix(' ') else {
                return Err(syntax(branching_line, "expected `branching T:IJ ...`"));
            };
            for tok in body.split(' ') {
                let (t, e) = tok
                    .split_once(':')
                    .ok_or_else(|| syntax(branching_line, format!("expected T:IJ, found `{tok}`")))?;
                let t = parse_usize(t, branching_line, "tetrahedron index")?;
                if t >= tets {
                    return Err(syntax(branching_line, format!("tetrahedron {t} out of range")));
                }
                let ec: Vec<char> = e.chars().collect();
                match ec.as_slice() {
                    [a, b] => match (digit(*a), digit(*b)) {
                        (Some(a), Some(b)) if a != b => branching.push((t, a, b)),
                        _ => return Err(syntax(branching_line, format!("malformed edge `{tok}`"))),
                    },
                    _ => return Err(syntax(branching_line, format!("malformed edge `{tok}`"))),
                }
            }
        }
        let mut orientation = None;
        if idx < lines.len() {
            let (ln, l) = take(&lines, &mut idx, "orientation line")?;
            let bits = l.strip_prefix("orientation ").ok_or_else(|| syntax(ln, "expected `orientation` or end of file"))?;
            let o: Option<Vec<i8>> = bits
                .chars()
                .map(|c| match c {
                    '+' => Some(1),
                    '-' => Some(-1),
                    _ => None,
                })
                .collect();
            match o {
                Some(o) if o.len() == tets => orientation = Some(o),
                _ => return Err(syntax(ln, format!("orientation needs {tets} signs from `+-`"))),
            }
            if idx < lines.len() {
                return Err(syntax(idx + 1, "unexpected trailing content"));
            }
        }
        Ok(SpineFile { tets, gluings, branching, orientation, branching_line })
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("spine 1\ntets {}\n", self.tets);
        for g in &self.gluings {
            s.push_str(&format!(
                "{}.{} -> {}.{} : {}{}{}\n",
                g.tet, g.face, g.other_tet, g.other_face, g.word[0], g.word[1], g.word[2]
            ));
        }
        s.push_str("branching");
        for (t, i, j) in &self.branching {
            s.push_str(&format!(" {t}:{i}{j}"));
        }
        s.push('\n');
        if let Some(o) = &self.orientation {
            s.push_str("orientation ");
            for &b in o {
                s.push(if b > 0 { '+' } else { '-' });
            }
            s.push('\n');
        }
        s
    }

    /// The glued triangulation alone, ignoring branching and orientation.
    pub fn to_triangulation(&self) -> Result<Triangulation> {
        let n = self.tets;
        let mut slots: Vec<[Option<Glue>; 4]> = vec![[None; 4]; n];
        for g in &self.gluings {
            let mut perm = [0u8; 4];
            for (k, c) in face_corners(g.face).iter().enumerate() {
                perm[*c as usize] = g.word[k];
            }
            perm[g.face as usize] = g.other_face;
            let inv = crate::triangulation::perm_inverse(&perm);
            if g.tet == g.other_tet && g.face == g.other_face {
                return Err(Error::UnpairedFace { tet: g.tet, face: g.face, msg: "is glued to itself".into() });
            }
            for (t, f, p, ot, of) in [(g.tet, g.face, perm, g.other_tet, g.other_face), (g.other_tet, g.other_face, inv, g.tet, g.face)] {
                if slots[t][f as usize].is_some() {
                    return Err(Error::UnpairedFace { tet: t, face: f, msg: "is glued more than once".into() });
                }
                slots[t][f as usize] = Some(Glue { tet: ot, face: of, perm: p });
            }
        }
        let mut glue = Vec::with_capacity(n);
        for (t, s) in slots.iter().enumerate() {
            let mut faces = [Glue { tet: 0, face: 0, perm: [0; 4] }; 4];
            for f in 0..4 {
                faces[f] = s[f].ok_or(Error::UnpairedFace { tet: t, face: f as u8, msg: "is not glued".into() })?;
            }
            glue.push(faces);
        }
        Triangulation::new(glue)
    }

    /// Build and validate the spine described by this file.
    pub fn to_spine(&self) -> Result<BranchedSpine> {
        let tri = self.to_triangulation()?;
        let e = tri.edge_class_count();
        let mut dir: Vec<Option<bool>> = vec![None; e];
        for &(t, i, j) in &self.branching {
            let c = tri.edge_class_of(t, i, j);
            if dir[c].is_some() {
                return Err(syntax(self.branching_line, format!("edge class of {t}:{i}{j} is directed twice")));
            }
            dir[c] = Some(tri.edge_agrees(t, i, j));
        }
        let dir: Vec<bool> = dir
            .iter()
            .enumerate()
            .map(|(c, d)| d.ok_or_else(|| syntax(self.branching_line, format!("edge class {c} has no direction"))))
            .collect::<Result<_>>()?;
        BranchedSpine::new(tri, dir, self.orientation.clone())
    }

    /// Canonical file for a spine: one line per glued pair in (tet, face)
    /// order, one branching entry per edge class, explicit orientation.
    pub fn from_spine(s: &BranchedSpine) -> SpineFile {
        let tri = s.triangulation();
        let mut gluings = Vec::new();
        for t in 0..tri.tet_count() {
            for f in 0..4u8 {
                let g = tri.glue(t, f);
                if (g.tet, g.face) < (t, f) {
                    continue;
                }
                let c = face_corners(f);
                gluings.push(GluingLine {
                    tet: t,
                    face: f,
                    other_tet: g.tet,
                    other_face: g.face,
                    word: [g.perm[c[0] as usize], g.perm[c[1] as usize], g.perm[c[2] as usize]],
                });
            }
        }
        let branching = (0..tri.edge_class_count())
            .map(|c| {
                let r = tri.edge_rep(c);
                if s.points(r.tet, r.tail, r.head) {
                    (r.tet, r.tail, r.head)
                } else {
                    (r.tet, r.head, r.tail)
                }
            })
            .collect();
        SpineFile {
            tets: tri.tet_count(),
            branching_line: gluings.len() + 3,
            gluings,
            branching,
            orientation: Some(s.orientation().to_vec()),
        }
    }
}

pub fn parse_spine(text: &str) -> Result<BranchedSpine> {
    SpineFile::parse(text)?.to_spine()
}

pub fn serialize_spine(s: &BranchedSpine) -> String {
    SpineFile::from_spine(s).serialize()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveRecord {
    Positive { face: usize, variant: usize },
    Negative { edge: usize },
}

/// A replayable sequence of moves.
///
/// ```text
/// movelog 1
/// seed 7
/// + 3 0
/// - 5
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveLog {
    pub seed: u64,
    pub moves: Vec<MoveRecord>,
}

impl MoveLog {
    pub fn serialize(&self) -> String {
        let mut s = format!("movelog 1\nseed {}\n", self.seed);
        for m in &self.moves {
            match m {
                MoveRecord::Positive { face, variant } => s.push_str(&format!("+ {face} {variant}\n")),
                MoveRecord::Negative { edge } => s.push_str(&format!("- {edge}\n")),
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<MoveLog> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "movelog 1")) => {}
            _ => return Err(syntax(1, "expected `movelog 1`")),
        }
        let seed = match lines.next() {
            Some((ln, l)) => match l.strip_prefix("seed ") {
                Some(s) => s.parse().map_err(|_| syntax(ln, "malformed seed"))?,
                None => return Err(syntax(ln, "expected `seed S`")),
            },
            None => return Err(syntax(2, "expected `seed S`")),
        };
        let mut moves = Vec::new();
        for (ln, l) in lines {
            let parts: Vec<&str> = l.split(' ').collect();
            let m = match parts.as_slice() {
                ["+", f, v] => MoveRecord::Positive {
                    face: parse_usize(f, ln, "face class")?,
                    variant: parse_usize(v, ln, "variant")?,
                },
                ["-", e] => MoveRecord::Negative { edge: parse_usize(e, ln, "edge class")? },
                _ => return Err(syntax(ln, "expected `+ FACE VARIANT` or `- EDGE`")),
            };
            moves.push(m);
        }
        Ok(MoveLog { seed, moves })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_TET: &str = "spine 1\ntets 1\n0.0 -> 0.1 : 023\n0.2 -> 0.3 : 012\nbranching 0:01 0:02 0:23\norientation +\n";

    #[test]
    fn round_trip_is_exact() {
        let f = SpineFile::parse(ONE_TET).unwrap();
        assert_eq!(f.serialize(), ONE_TET);
        let s = f.to_spine().unwrap();
        assert_eq!(parse_spine(&serialize_spine(&s)).unwrap(), s);
    }

    #[test]
    fn malformed_permutation_names_line() {
        let bad = ONE_TET.replace(": 012", ": 013");
        match SpineFile::parse(&bad) {
            Err(Error::Syntax { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("permutation"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_self_gluing_is_unpaired() {
        let bad = "spine 1\ntets 1\n0.0 -> 0.0 : 123\n0.2 -> 0.3 : 012\nbranching 0:01 0:02 0:23\n";
        assert!(matches!(parse_spine(bad), Err(Error::UnpairedFace { .. })));
    }

    #[test]
    fn movelog_round_trip() {
        let log = MoveLog { seed: 9, moves: vec![MoveRecord::Positive { face: 2, variant: 1 }, MoveRecord::Negative { edge: 4 }] };
        assert_eq!(MoveLog::parse(&log.serialize()).unwrap(), log);
    }
}
