fn main() {
    for name in reesolve::BUILTIN_NAMES {
        let s = reesolve::builtin_scenario(name).unwrap();
        let out = reesolve::scenario::run_scenario(&s);
        std::fs::write(format!("/tmp/{name}.txt"), out.report.text()).unwrap();
    }
}
