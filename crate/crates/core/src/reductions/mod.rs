//! Distance problems on linear CA and their reductions to and from the
//! discrete logarithm in `F_{p^n}`.

mod ddp;
mod file;
mod instance;
mod scan;
mod transform;

pub use ddp::{ddp_to_dlp, ddp_to_dlp_full, diagonalize, solve_ddp, solve_ddp_bruteforce, DdpSolver, Diagonalization};
pub use file::{DdpInstanceFile, SddpInstanceFile};
pub use instance::{DdpInstance, DdpSolution, SddpInstance};
pub use scan::{solve_fdp, solve_sddp, solve_sddp_parallel, ScanOutcome};
pub use transform::{decode_dlp, dlp_to_ddp, mul_matrix, DlpDecoder};
