//! Driving the command-line reports from code.

fn main() {
    let mut out = Vec::new();
    let code = alfeld::cli::main_with(["alfeld", "--csv", "dims", "--n", "2", "--r-max", "3", "--k", "1"], &mut out);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
}
