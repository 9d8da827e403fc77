// Writes the canned descriptor files used by the command line examples and
// the acceptance harness. Takes the output directory as its only argument.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "fuslim/action.hpp"
#include "fuslim/fusion.hpp"
#include "fuslim/group.hpp"
#include "fuslim/offenders.hpp"

#include "instances.hpp"

using namespace fuslim;

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  out.close();
  std::cout << path.string() << "\n";
}

std::string action_file(const Action& act) {
  return format_group(*act.parent) + format_action(act);
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  write_file(dir / "a6.grp", format_group(*canned::a6_group()));
  write_file(dir / "s4.setup", format_setup(canned::s4_setup()));
  write_file(dir / "g54.setup", format_setup(canned::affine54_setup()));
  write_file(dir / "s5-natural.act", action_file(natural_module_action(5)));
  write_file(dir / "sl32-natural.act", action_file(canned::transvection_group()));
  write_file(dir / "s3xs5.act", action_file(canned::s3xs5_natural()));
  write_file(dir / "s6-quotient.act", action_file(canned::s6_quotient()));

  // S3 permuting three points but acting trivially on a line: not faithful,
  // kept as the standard validation error example
  GroupPtr s3 = canned::make_group(3, {"(1 2)", "(1 2 3)"});
  PAbelianGroup line{2, {2}};
  Action trivial = action_from_matrices(
      full_subgroup(s3), line,
      {{s3->index_of(Perm::from_cycles(3, "(1 2)")), Mat{1}},
       {s3->index_of(Perm::from_cycles(3, "(1 2 3)")), Mat{1}}});
  write_file(dir / "s3-trivial.act", action_file(trivial));

  return 0;
}
