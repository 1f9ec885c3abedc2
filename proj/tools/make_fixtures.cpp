// Regenerates the JSON fixtures: fsl_make_fixtures <output-dir>

#include <fstream>
#include <iostream>

#include "fsl/io.hpp"
#include "fsl/surfaces.hpp"

using namespace fsl;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& dir, const std::string& name, const io::Json& j) {
  std::ofstream out(dir / name);
  out << j.dump(1) << "\n";
  std::cout << "wrote " << (dir / name).string() << "\n";
}

std::vector<std::vector<long>> simplex_boundary(long n) {
  std::vector<std::vector<long>> facets;
  for (long skip = 0; skip <= n + 1; ++skip) {
    std::vector<long> f;
    for (long v = 0; v <= n + 1; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(f);
  }
  return facets;
}

// Kühnel's 9-vertex ℂP², vertices relabelled 0..8
const std::vector<std::vector<long>> kCp2 = {
    {0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 4, 5}, {0, 1, 3, 4, 6}, {0, 1, 3, 5, 7}, {0, 1, 3, 6, 7},
    {0, 1, 4, 5, 6}, {0, 1, 5, 6, 8}, {0, 1, 5, 7, 8}, {0, 1, 6, 7, 8}, {0, 2, 3, 4, 8}, {0, 2, 3, 5, 8},
    {0, 2, 4, 5, 6}, {0, 2, 4, 6, 7}, {0, 2, 4, 7, 8}, {0, 2, 5, 6, 8}, {0, 2, 6, 7, 8}, {0, 3, 4, 6, 7},
    {0, 3, 4, 7, 8}, {0, 3, 5, 7, 8}, {1, 2, 3, 4, 8}, {1, 2, 3, 5, 7}, {1, 2, 3, 6, 7}, {1, 2, 3, 6, 8},
    {1, 2, 4, 5, 7}, {1, 2, 4, 7, 8}, {1, 2, 6, 7, 8}, {1, 3, 4, 6, 8}, {1, 4, 5, 6, 8}, {1, 4, 5, 7, 8},
    {2, 3, 5, 6, 7}, {2, 3, 5, 6, 8}, {2, 4, 5, 6, 7}, {3, 4, 5, 6, 7}, {3, 4, 5, 6, 8}, {3, 4, 5, 7, 8},
};

io::Json linking(long d, long num, long den, int eps) {
  RatMatrix v(1, 1);
  v(0, 0) = Rational(num, den);
  return io::linking_to_json(LinkingForm(eps, IntVector{Integer(d)}, v));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: fsl_make_fixtures <output-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);

  std::vector<std::vector<long>> circle, torus;
  for (long i = 0; i < 6; ++i) circle.push_back({i, (i + 1) % 6});
  for (long i = 0; i < 7; ++i) {
    torus.push_back({i, (i + 1) % 7, (i + 3) % 7});
    torus.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  write(dir, "circle6.json", io::manifold_to_json(SimplicialManifold::oriented(1, circle)));
  write(dir, "torus7.json", io::manifold_to_json(SimplicialManifold::oriented(2, torus)));
  for (long n = 1; n <= 4; ++n)
    write(dir, "sphere" + std::to_string(n) + ".json",
          io::manifold_to_json(SimplicialManifold::oriented(static_cast<std::size_t>(n), simplex_boundary(n))));

  SimplicialManifold cp2 = SimplicialManifold::oriented(4, kCp2);
  const PairedLocalSystem trivial(LocalSystem::trivial(1), EpsSymmetricForm::identity(1));
  if (twisted_signature(cp2, trivial) < 0) cp2 = cp2.with_reversed_orientation();
  write(dir, "cp2.json", io::manifold_to_json(cp2));

  const PolygonSurface genus2(2);
  write(dir, "genus2.json", io::manifold_to_json(genus2.manifold()));
  SplitMix64 rng(2024);
  const auto omega4 = EpsSymmetricForm::hyperbolic(2, -1);
  write(dir, "genus2_system.json", io::system_to_json(genus2.system(random_surface_monodromy(2, 4, rng)), omega4));

  write(dir, "trivial1.json", io::system_to_json(LocalSystem::trivial(1), EpsSymmetricForm::identity(1)));
  write(dir, "trivial_symplectic2.json",
        io::system_to_json(LocalSystem::trivial(2), EpsSymmetricForm::hyperbolic(1, -1)));

  const IntMatrix e8{{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, 0},
                     {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, -1}, {0, 0, 0, 0, -1, 2, -1, 0},
                     {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, 0, 0, -1, 0, 0, 2}};
  write(dir, "e8.json", io::form_to_json(EpsSymmetricForm(1, to_rational(e8))));
  write(dir, "identity2.json", io::form_to_json(EpsSymmetricForm::identity(2)));
  write(dir, "hyperbolic_skew.json", io::form_to_json(EpsSymmetricForm::hyperbolic(1, -1)));

  write(dir, "linking_z4_quarter.json", linking(4, 1, 4, 1));
  write(dir, "linking_z9_ninth.json", linking(9, 1, 9, 1));
  write(dir, "linking_z4_half_skew.json", linking(4, 1, 2, -1));
  write(dir, "linking_z3_third.json", linking(3, 1, 3, 1));
  write(dir, "linking_z2_half_skew.json", linking(2, 1, 2, -1));
  write(dir, "linking_z6_sixth.json", linking(6, 1, 6, 1));

  write(dir, "isometry_i_plus.json", io::isometry_to_json(Isometry(EpsSymmetricForm::diagonal({1}), IntMatrix{{-1}})));
  write(dir, "isometry_i_minus.json",
        io::isometry_to_json(Isometry(EpsSymmetricForm::diagonal({-1}), IntMatrix{{-1}})));
  write(dir, "isometry_i_rot.json",
        io::isometry_to_json(Isometry(EpsSymmetricForm::identity(2), IntMatrix{{0, -1}, {1, 0}})));
  return 0;
}
