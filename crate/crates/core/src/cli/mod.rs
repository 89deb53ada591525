//! Command-line front end: matrix input, rendering and subcommand dispatch.

mod json;
mod parse;
mod render;
mod run;

pub use json::{closed_form_to_json, matrix_to_json, parse_closed_form_json, poly_to_json, ClosedFormJson, TermJson};
pub use parse::parse_matrix_input;
pub use render::{
    render_closed_form, render_entry_latex, render_entry_plain, render_matrix, render_poly, render_rational,
    threshold_message,
};
pub use run::{exit_code, run};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderStyle {
    pub format: Format,
    pub index_symbol: String,
}

impl RenderStyle {
    pub fn new(format: Format) -> Self {
        RenderStyle { format, index_symbol: "k".into() }
    }
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle::new(Format::Plain)
    }
}
