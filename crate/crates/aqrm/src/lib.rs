pub mod poly;
pub mod roots;
pub mod series;
pub mod oracle;
pub mod spectrum;
pub mod cli;
