pub mod calculus;
pub mod canonical;
pub mod form;
pub mod poly;
pub mod proxy;
pub mod spaces;
pub mod text;
pub mod vsplit;

pub use calculus::{barycentric_monomial, from_barycentric, to_barycentric, integrate, integrate_reference, integrate_top, pairing, trace};
pub use canonical::{canonical_dof_matrix, canonical_functionals, canonical_projection, FaceMoment};
pub use form::{merge_sign, sigma_index, sigmas, wedge_of_covectors, KForm, PiecewiseKForm};
pub use poly::{binomial, monomials, AffineMap, Exp, MonomialBasis, Poly};
pub use spaces::{build_pr_lambda_k, build_pr_minus, build_pr_minus_shifted, dim_pr, dim_pr_minus, form_vector};
pub use vsplit::{vertex_split, VertexSplit};
pub use proxy::{curl, div, form_to_proxy, grad, proxy_to_form, Proxy};
pub use text::{format_form, format_piecewise, parse_form, FormText};
