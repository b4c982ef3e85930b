// Regenerates the bundled synthetic datasets byte-for-byte. The shipped
// data/pima_synth.* files come from:
//   c45-synthgen --preset diabetes --out data/pima_synth

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "c45/io.hpp"
#include "c45/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"c45-synthgen: emit the bundled synthetic datasets"};
  std::string preset = "diabetes", out = "synth";
  std::size_t cases = 0;
  std::uint64_t seed = 0;
  app.add_option("--preset", preset, "diabetes | mixed | diagonal")
      ->check(CLI::IsMember({"diabetes", "mixed", "diagonal"}));
  app.add_option("--out", out, "output stem (writes STEM.names + STEM.data)");
  app.add_option("--cases", cases, "case count (0 = preset default)");
  app.add_option("--seed", seed, "seed (0 = preset default)");
  CLI11_PARSE(app, argc, argv);

  c45::Dataset d;
  if (preset == "diabetes") {
    d = c45::synth::diabetes_like(cases ? cases : 768, seed ? seed : 20240314);
  } else if (preset == "mixed") {
    d = c45::synth::mixed_task(cases ? cases : 300, seed ? seed : 99);
  } else {
    d = c45::synth::diagonal_task(cases ? cases : 1000, seed ? seed : 11);
  }
  std::string header = "| synthetic dataset: preset " + preset + "\n";
  c45::write_file(out + ".names", c45::serialize_names(d.schema, header));
  c45::write_file(out + ".data", c45::serialize_data(d, header));
  std::printf("wrote %s.names and %s.data (%zu cases)\n", out.c_str(), out.c_str(),
              d.cases.size());
  return 0;
}
