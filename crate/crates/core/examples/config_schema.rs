// Print the JSON Schema of the run configuration file.

use inspection_planner::pipeline::RunConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let schema: serde_json::Value = serde_json::from_str(&RunConfig::json_schema())?;
    let required = schema["required"].as_array().map_or(0, Vec::len);
    eprintln!("{required} required fields");
    Ok(())
}

fn main() {
    print!("{}", RunConfig::json_schema());
}
