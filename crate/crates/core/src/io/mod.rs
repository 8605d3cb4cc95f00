//! Run configuration and the text formats exchanged with the plotting scripts.

pub mod config;
pub mod dump;
pub mod table;

pub use config::{parse_config, RunConfig};
pub use dump::{read_field_dump, write_field_dump, DumpHeader, DumpKind, DumpedField, FieldDump};
pub use table::{
    format_bench_table, format_error_table, parse_bench_table, parse_error_table, BenchRow,
};
