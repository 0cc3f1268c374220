//! Real, strongly real and zeta-real conjugacy classes of GL_n(q), SL_n(q),
//! PGL_n(q), PSL_n(q) and SL_n(q)/Y.

pub mod field;
pub mod poly;
pub mod labels;
pub mod counting;
pub mod oracle;
