fn main() {
    println!("qcomp");
}
