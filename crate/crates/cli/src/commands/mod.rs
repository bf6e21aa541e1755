mod compare;
mod eval;
mod index;
mod plot;
mod reproduce;
mod rules;

pub use compare::compare;
pub use eval::eval;
pub use index::index;
pub use plot::plot;
pub use reproduce::reproduce;
pub use rules::rules;

use hfskit_core::dsl::Target;

fn kind(t: &Target<'_>) -> &'static str {
    match t {
        Target::Flat(_) => "flat",
        Target::Hierarchy(_) => "hierarchy",
    }
}
