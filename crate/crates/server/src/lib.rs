//! JSON API and command line for a music-circles [`Catalog`](music_circles::Catalog).
//!
//! | method | path | body |
//! |---|---|---|
//! | GET | `/api/features` | the five display features |
//! | GET | `/api/number-ones?sort=&order=` | No.1 songs, optionally ranked by a feature |
//! | GET | `/api/songs/top?feature=&n=` | top-N rows (n defaults to 5) |
//! | GET | `/api/songs?search=&sort=&order=&cluster=&offset=&limit=` | searchable song table |
//! | GET | `/api/clusters`, `/api/clusters/{id}` | cluster summaries / detail with profile and members |
//! | GET | `/api/megahits` | bubble-chart rows |
//! | GET, POST | `/api/survey` | survey definition / taste result for four chosen ids |
//!
//! Errors are `{"code": ..., "message": ...}` with a 4xx/5xx status.

pub mod api;
pub mod cli;
mod error;
pub mod views;

pub use api::{router, AppState};
pub use error::ApiError;
