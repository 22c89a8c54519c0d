#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace termfuse::testing {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

NativeRegistration import_tsf(const std::filesystem::path& path, const PivotPolicy& policy) {
  const auto resource = parse_source(read_text(path));
  return register_native(pivot(resource, policy), resource, path.stem().string() + ".native.gmt");
}

std::vector<NativeRegistration> gift_imports() {
  std::vector<NativeRegistration> out;
  for (const char* name : {"gift/nlm-mesh.tsf", "gift/inist-pascal.tsf", "gift/inra-biotech.tsf"}) {
    out.push_back(import_tsf(data_path(name)));
  }
  return out;
}

}  // namespace termfuse::testing
