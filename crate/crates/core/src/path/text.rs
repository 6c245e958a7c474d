//! Line-based text form of paths and move lists.
//!
//! A path is whitespace-separated vertex ids. A move list has one move per
//! line: `index tile`, or `index tile from to` as written by `format_moves`.

use crate::error::{Error, Result};
use crate::model::{Complex, TileId, VertexId};

use super::{Move, Path};

fn parse_id(tok: &str, prefix: char) -> Result<u32> {
    tok.strip_prefix(prefix).unwrap_or(tok).parse().map_err(|_| Error::InvalidPath(format!("bad id {tok:?}")))
}

pub fn parse_path(c: &Complex, text: &str) -> Result<Path> {
    let ids = text.split_whitespace().map(|t| parse_id(t, 'v').map(VertexId)).collect::<Result<Vec<_>>>()?;
    Path::new(c, ids)
}

pub fn format_path(path: &Path) -> String {
    let ids: Vec<String> = path.vertices().iter().map(|v| v.0.to_string()).collect();
    ids.join(" ")
}

pub fn format_moves(moves: &[Move]) -> String {
    moves.iter().map(|m| format!("{} {} {} {}\n", m.index, m.tile.0, m.from.0, m.to.0)).collect()
}

/// Reads moves against a starting path, filling in the replaced vertices
/// when only `index tile` is given.
pub fn parse_moves(c: &Complex, path: &Path, text: &str) -> Result<Vec<Move>> {
    let mut cur = path.clone();
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 4 {
            return Err(Error::InvalidMove(format!("bad line {line:?}")));
        }
        let index: usize = toks[0].parse().map_err(|_| Error::InvalidMove(format!("bad index {:?}", toks[0])))?;
        let tile = TileId(parse_id(toks[1], 't')?);
        let v = cur.vertices();
        if index == 0 || index + 1 >= v.len() {
            return Err(Error::InvalidMove(format!("index {index} out of range")));
        }
        c.tile(tile)?;
        let from = v[index];
        let to = if toks.len() == 4 {
            VertexId(parse_id(toks[3], 'v')?)
        } else {
            super::flip_target(c, tile, v[index - 1], from, v[index + 1])
                .ok_or_else(|| Error::InvalidMove(format!("line {line:?} is not a flip")))?
        };
        let mv = Move { index, tile, from, to };
        cur = super::apply_move(c, &cur, &mv)?;
        out.push(mv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::local_moves;

    #[test]
    fn round_trip() {
        let c = crate::build(2).unwrap();
        let p = c.tile_points(c.root()).unwrap();
        let path = Path::new(&c, vec![p[0], p[4], p[8]]).unwrap();
        let text = format_path(&path);
        assert_eq!(parse_path(&c, &text).unwrap(), path);
        assert_eq!(parse_path(&c, &format!("v{} v{} v{}", p[0].0, p[4].0, p[8].0)).unwrap(), path);
        let moves = local_moves(&c, &path);
        assert_eq!(parse_moves(&c, &path, &format_moves(&moves)).unwrap(), moves);
        let short = format!("{} {}\n", moves[0].index, moves[0].tile.0);
        assert_eq!(parse_moves(&c, &path, &short).unwrap(), moves);
    }

    #[test]
    fn garbage_is_rejected() {
        let c = crate::build(2).unwrap();
        assert!(parse_path(&c, "0 x").is_err());
        assert!(parse_path(&c, "0 2").is_err());
    }
}
