use thiserror::Error;

use crate::model::{EdgeId, PlaneId, TileId, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown tile {0}")]
    UnknownTile(TileId),
    #[error("unknown plane {0}")]
    UnknownPlane(PlaneId),
    #[error("tile {tile} not yet created at round {round}")]
    TileNotYetCreated { tile: TileId, round: u32 },
    #[error("macro-edge {0} not yet created")]
    EdgeNotYetCreated(EdgeId),
    #[error("tile {0} is not minimal")]
    NotMinimal(TileId),
    #[error("tile {0} was already subdivided this round")]
    AlreadySubdivided(TileId),
    #[error("invalid rule table: {0}")]
    InvalidRules(String),
    #[error("stale pasting site (complex changed since enumeration)")]
    StaleSite,
    #[error("invalid pasting site: {0}")]
    InvalidSite(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("path is not of the required shape: {0}")]
    BadShape(String),
    #[error("no pasting: {0}")]
    NoPasting(String),
    #[error("vertex {0} is a corner or edge-mid vertex; main edges are undefined there")]
    UndefinedKind(VertexId),
    #[error("edge {0}-{1} is not incident to the vertex")]
    NotIncident(VertexId, VertexId),
    #[error("path crosses planes")]
    NotPlanar,
    #[error("endpoints are not on the boundary of tile {0}")]
    NotOnBoundary(TileId),
    #[error("vertices {0} and {1} are disconnected")]
    Disconnected(VertexId, VertexId),
    #[error("invalid level {0}")]
    InvalidLevel(u32),
    #[error("unknown lemma id {0}")]
    UnknownLemma(String),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
