//! Template-based yes/no question generation and answer balancing.

mod balance;
mod generate;
pub mod metrics;
mod templates;

pub use balance::balance;
pub use generate::{answer, generate_qa, roughness_questions_apply, Answer, QaPair};
pub use templates::{template, QuestionTemplate, TEMPLATES};
