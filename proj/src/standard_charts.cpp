#include "ecw/standard_charts.hpp"

#include <cmath>

namespace ecw {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

ExpVec ev(int n, std::initializer_list<std::pair<int, int>> entries) {
  ExpVec e(n, 0);
  for (auto [i, p] : entries) e[i] = p;
  return e;
}
}  // namespace

ChartPtr make_plane_chart() {
  ChartBuilder b("plane");
  b.add_ordinary("x");
  b.add_ordinary("y");
  b.add_formal("tau");
  return b.build();
}

ChartPtr make_line_chart() {
  ChartBuilder b("line");
  b.add_ordinary("x");
  b.add_formal("tau");
  return b.build();
}

ChartPtr make_cplane_chart() {
  ChartBuilder b("cplane");
  int z = b.add_ordinary("z");
  int zc = b.add_ordinary("zc");
  b.add_formal("tau");
  b.set_conjugate_pair(z, zc);
  return b.build();
}

ChartPtr make_point_chart() {
  ChartBuilder b("point");
  b.add_formal("tau");
  return b.build();
}

ChartPtr make_s3_chart() {
  ChartBuilder bld("s3");
  const int n = 5;
  int z1 = bld.add_frame_variable("z1");
  int z1c = bld.add_frame_variable("z1c");
  int z2 = bld.add_frame_variable("z2");
  int z2c = bld.add_frame_variable("z2c");
  bld.add_formal("tau");
  bld.set_conjugate_pair(z1, z1c);
  bld.set_conjugate_pair(z2, z2c);
  int a = bld.add_frame_generator("a");
  int b = bld.add_frame_generator("b");
  int bc = bld.add_frame_generator("bc");

  const GaussianRational one(1), minus(-1), two(2);
  // z2*z2c -> 1 - z1*z1c
  bld.add_rule(ev(n, {{z2, 1}, {z2c, 1}}),
               {{ev(n, {}), one}, {ev(n, {{z1, 1}, {z1c, 1}}), minus}});

  // dz1 = z1 a - z2c b ; dz2 = z2 a + z1c b
  // dz1c = -z1c a - z2 bc ; dz2c = -z2c a + z1 bc
  bld.set_d_var(z1, {{a, {{ev(n, {{z1, 1}}), one}}}, {b, {{ev(n, {{z2c, 1}}), minus}}}});
  bld.set_d_var(z2, {{a, {{ev(n, {{z2, 1}}), one}}}, {b, {{ev(n, {{z1c, 1}}), one}}}});
  bld.set_d_var(z1c, {{a, {{ev(n, {{z1c, 1}}), minus}}}, {bc, {{ev(n, {{z2, 1}}), minus}}}});
  bld.set_d_var(z2c, {{a, {{ev(n, {{z2c, 1}}), minus}}}, {bc, {{ev(n, {{z1, 1}}), one}}}});

  // da = -b^bc, db = 2 a^b, dbc = -2 a^bc
  GenMask b_bc = (GenMask(1) << b) | (GenMask(1) << bc);
  GenMask a_b = (GenMask(1) << a) | (GenMask(1) << b);
  GenMask a_bc = (GenMask(1) << a) | (GenMask(1) << bc);
  bld.set_d_gen(a, {{b_bc, {{ev(n, {}), minus}}}});
  bld.set_d_gen(b, {{a_b, {{ev(n, {}), two}}}});
  bld.set_d_gen(bc, {{a_bc, {{ev(n, {}), GaussianRational(-2)}}}});

  // a = z1c dz1 + z2c dz2 ; b = z1 dz2 - z2 dz1 ; bc = z1c dz2c - z2c dz1c
  bld.set_frame_row(a, {{z1, {{ev(n, {{z1c, 1}}), one}}}, {z2, {{ev(n, {{z2c, 1}}), one}}}});
  bld.set_frame_row(b, {{z2, {{ev(n, {{z1, 1}}), one}}}, {z1, {{ev(n, {{z2, 1}}), minus}}}});
  bld.set_frame_row(bc, {{z2c, {{ev(n, {{z1c, 1}}), one}}}, {z1c, {{ev(n, {{z2c, 1}}), minus}}}});
  return bld.build();
}

NumericModel make_numeric_model(const ChartPtr& chart, std::vector<NumericBlock> blocks) {
  struct VarRealization {
    NumericBlock::Kind kind;
    int param = -1;   // first parameter of the block
    int offset = 0;   // position of the variable inside the block
  };
  auto realizations = std::make_shared<std::vector<VarRealization>>(chart->num_vars());
  int nparams = 0;
  std::vector<std::pair<NumericBlock::Kind, int>> sample_plan;  // kind, first param
  for (const NumericBlock& blk : blocks) {
    int span = 0, params = 0;
    switch (blk.kind) {
      case NumericBlock::Real:
      case NumericBlock::SimplexCoord: span = 1; params = 1; break;
      case NumericBlock::UnitCircle: span = 1; params = 1; break;
      case NumericBlock::ConjPair: span = 2; params = 2; break;
      case NumericBlock::Sphere3: span = 4; params = 3; break;
      case NumericBlock::Tau: span = 1; params = 0; break;
    }
    for (int k = 0; k < span; ++k)
      (*realizations)[blk.first_var + k] = {blk.kind, nparams, k};
    sample_plan.push_back({blk.kind, nparams});
    nparams += params;
  }

  NumericModel m;
  m.num_params = nparams;
  m.value = [realizations](int var, const std::vector<double>& p) -> std::complex<double> {
    const VarRealization& r = (*realizations)[var];
    switch (r.kind) {
      case NumericBlock::Real:
      case NumericBlock::SimplexCoord:
        return p[r.param];
      case NumericBlock::UnitCircle:
        return std::polar(1.0, p[r.param]);
      case NumericBlock::ConjPair: {
        std::complex<double> z(p[r.param], p[r.param + 1]);
        return r.offset == 0 ? z : std::conj(z);
      }
      case NumericBlock::Sphere3: {
        double phi = p[r.param], alpha = p[r.param + 1], beta = p[r.param + 2];
        switch (r.offset) {
          case 0: return std::cos(phi) * std::polar(1.0, alpha);
          case 1: return std::cos(phi) * std::polar(1.0, -alpha);
          case 2: return std::sin(phi) * std::polar(1.0, beta);
          default: return std::sin(phi) * std::polar(1.0, -beta);
        }
      }
      case NumericBlock::Tau:
        return std::complex<double>(0.0, kTwoPi);
    }
    return 0.0;
  };
  m.dvalue = [realizations](int var, int j, const std::vector<double>& p) -> std::complex<double> {
    const VarRealization& r = (*realizations)[var];
    const std::complex<double> I(0.0, 1.0);
    switch (r.kind) {
      case NumericBlock::Real:
      case NumericBlock::SimplexCoord:
        return j == r.param ? 1.0 : 0.0;
      case NumericBlock::UnitCircle:
        return j == r.param ? I * std::polar(1.0, p[r.param]) : 0.0;
      case NumericBlock::ConjPair:
        if (j == r.param) return 1.0;
        if (j == r.param + 1) return r.offset == 0 ? I : -I;
        return 0.0;
      case NumericBlock::Sphere3: {
        double phi = p[r.param], alpha = p[r.param + 1], beta = p[r.param + 2];
        std::complex<double> ea = std::polar(1.0, alpha), eb = std::polar(1.0, beta);
        if (r.offset == 0) {
          if (j == r.param) return -std::sin(phi) * ea;
          if (j == r.param + 1) return I * std::cos(phi) * ea;
        } else if (r.offset == 1) {
          if (j == r.param) return -std::sin(phi) * std::conj(ea);
          if (j == r.param + 1) return -I * std::cos(phi) * std::conj(ea);
        } else if (r.offset == 2) {
          if (j == r.param) return std::cos(phi) * eb;
          if (j == r.param + 2) return I * std::sin(phi) * eb;
        } else {
          if (j == r.param) return std::cos(phi) * std::conj(eb);
          if (j == r.param + 2) return -I * std::sin(phi) * std::conj(eb);
        }
        return 0.0;
      }
      case NumericBlock::Tau:
        return 0.0;
    }
    return 0.0;
  };
  m.sample = [sample_plan, nparams](std::mt19937_64& rng) {
    std::vector<double> p(nparams, 0.0);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.3, kTwoPi - 0.3);
    std::uniform_real_distribution<double> lat(0.2, 1.3);
    std::uniform_real_distribution<double> simplex01(0.05, 0.2);
    for (const auto& [kind, first] : sample_plan) {
      switch (kind) {
        case NumericBlock::Real:
          p[first] = box(rng);
          break;
        case NumericBlock::SimplexCoord:
          p[first] = simplex01(rng);
          break;
        case NumericBlock::UnitCircle:
          p[first] = angle(rng);
          break;
        case NumericBlock::ConjPair:
          p[first] = box(rng);
          p[first + 1] = box(rng);
          break;
        case NumericBlock::Sphere3:
          p[first] = lat(rng);
          p[first + 1] = angle(rng);
          p[first + 2] = angle(rng);
          break;
        case NumericBlock::Tau:
          break;
      }
    }
    return p;
  };
  return m;
}

NumericModel infer_numeric_model(const ChartPtr& chart) {
  std::vector<NumericBlock> blocks;
  for (int v = 0; v < chart->num_vars(); ++v) {
    const Variable& var = chart->var(v);
    if (var.kind == VarKind::FormalConstant) {
      blocks.push_back({NumericBlock::Tau, v});
    } else if (var.kind == VarKind::Unit) {
      blocks.push_back({NumericBlock::UnitCircle, v});
    } else if (var.name == "z1" && v + 3 < chart->num_vars() &&
               chart->var(v + 3).name == "z2c") {
      blocks.push_back({NumericBlock::Sphere3, v});
      v += 3;
    } else if (var.conj != v && var.conj == v + 1) {
      blocks.push_back({NumericBlock::ConjPair, v});
      v += 1;
    } else if (!var.name.empty() && var.name[0] == 't' &&
               var.name.find_first_not_of("0123456789", 1) == std::string::npos) {
      blocks.push_back({NumericBlock::SimplexCoord, v});
    } else {
      blocks.push_back({NumericBlock::Real, v});
    }
  }
  return make_numeric_model(chart, std::move(blocks));
}

}  // namespace ecw
