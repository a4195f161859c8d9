#pragma once

#include <iosfwd>
#include <string>

#include "ulpar/field.hpp"

namespace ulpar {

struct Snapshot {
  Field field;
  double time = 0.0;
};

void write_snapshot(std::ostream& os, const Field& u, double time);
void write_snapshot(const std::string& path, const Field& u, double time);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace ulpar
