#include "lumenorm/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* k : known) {
      if (item.key() == k) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw FormatError("unknown config key \"" + item.key() + "\" in " + where);
    }
  }
}

BilateralParams bilateral_from_json(const json& obj, const std::string& where,
                                    BilateralParams defaults) {
  if (!obj.is_object()) {
    throw FormatError(where + " must be a JSON object");
  }
  reject_unknown_keys(obj, {"sigma_d", "sigma_r", "radius"}, where);
  BilateralParams p = defaults;
  if (obj.contains("sigma_d")) p.sigma_d = obj.at("sigma_d").get<double>();
  if (obj.contains("sigma_r")) p.sigma_r = obj.at("sigma_r").get<double>();
  if (obj.contains("radius")) p.radius = obj.at("radius").get<int>();
  return p;
}

LceParams lce_from_json(const json& obj, LceParams defaults) {
  if (!obj.is_object()) {
    throw FormatError("\"lce\" must be a JSON object");
  }
  reject_unknown_keys(obj, {"n", "alpha", "tau", "guard_eps"}, "\"lce\"");
  LceParams p = defaults;
  if (obj.contains("n")) p.n = obj.at("n").get<int>();
  if (obj.contains("alpha")) p.alpha = obj.at("alpha").get<double>();
  if (obj.contains("tau")) p.tau = obj.at("tau").get<double>();
  if (obj.contains("guard_eps")) p.guard_eps = obj.at("guard_eps").get<double>();
  return p;
}

json bilateral_to_json(const BilateralParams& p) {
  return json{{"sigma_d", p.sigma_d}, {"sigma_r", p.sigma_r}, {"radius", p.radius}};
}

}  // namespace

void validate(const PipelineConfig& cfg) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) {
      throw InvalidArgument(std::string("config: ") + what + " must be positive");
    }
  };
  positive(cfg.epsilon, "epsilon");
  if (!(cfg.dog_sigma1 > 0.0) || !(cfg.dog_sigma2 > cfg.dog_sigma1)) {
    throw InvalidArgument("config: need 0 < dog_sigma1 < dog_sigma2");
  }
  for (const BilateralParams* p : {&cfg.dob_p1, &cfg.dob_p2}) {
    positive(p->sigma_d, "dob sigma_d");
    positive(p->sigma_r, "dob sigma_r");
    if (p->radius < 1) {
      throw InvalidArgument("config: dob radius must be at least 1");
    }
  }
  if (cfg.dob_p1 == cfg.dob_p2) {
    throw InvalidArgument("config: dob_p1 and dob_p2 must differ");
  }
  if (cfg.lce.n < 0) {
    throw InvalidArgument("config: lce.n must be nonnegative");
  }
  if (!(cfg.lce.alpha > 0.0 && cfg.lce.alpha < 1.0)) {
    throw InvalidArgument("config: lce.alpha must lie in (0, 1)");
  }
  positive(cfg.lce.tau, "lce.tau");
  positive(cfg.lce.guard_eps, "lce.guard_eps");
  positive(cfg.ssr_c, "ssr_c");
  positive(cfg.gic_gamma, "gic_gamma");
  positive(cfg.tt_gamma, "tt_gamma");
}

PipelineConfig config_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw FormatError("config must be a JSON object");
  }
  reject_unknown_keys(root,
                      {"epsilon", "dog_sigma1", "dog_sigma2", "dob_p1", "dob_p2",
                       "lce", "ssr_c", "gic_gamma", "tt_gamma"},
                      "config");
  PipelineConfig cfg;
  try {
    if (root.contains("epsilon")) cfg.epsilon = root.at("epsilon").get<double>();
    if (root.contains("dog_sigma1")) cfg.dog_sigma1 = root.at("dog_sigma1").get<double>();
    if (root.contains("dog_sigma2")) cfg.dog_sigma2 = root.at("dog_sigma2").get<double>();
    if (root.contains("dob_p1"))
      cfg.dob_p1 = bilateral_from_json(root.at("dob_p1"), "\"dob_p1\"", cfg.dob_p1);
    if (root.contains("dob_p2"))
      cfg.dob_p2 = bilateral_from_json(root.at("dob_p2"), "\"dob_p2\"", cfg.dob_p2);
    if (root.contains("lce")) cfg.lce = lce_from_json(root.at("lce"), cfg.lce);
    if (root.contains("ssr_c")) cfg.ssr_c = root.at("ssr_c").get<double>();
    if (root.contains("gic_gamma")) cfg.gic_gamma = root.at("gic_gamma").get<double>();
    if (root.contains("tt_gamma")) cfg.tt_gamma = root.at("tt_gamma").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("config value has the wrong type: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open config file " + path.string());
  }
  std::stringstream buf;
  buf << is.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const PipelineConfig& cfg) {
  json root{
      {"epsilon", cfg.epsilon},
      {"dog_sigma1", cfg.dog_sigma1},
      {"dog_sigma2", cfg.dog_sigma2},
      {"dob_p1", bilateral_to_json(cfg.dob_p1)},
      {"dob_p2", bilateral_to_json(cfg.dob_p2)},
      {"lce",
       json{{"n", cfg.lce.n},
            {"alpha", cfg.lce.alpha},
            {"tau", cfg.lce.tau},
            {"guard_eps", cfg.lce.guard_eps}}},
      {"ssr_c", cfg.ssr_c},
      {"gic_gamma", cfg.gic_gamma},
      {"tt_gamma", cfg.tt_gamma},
  };
  return root.dump(2);
}

MethodId parse_method(std::string_view name) {
  if (name == "fdfi") return MethodId::fdfi;
  if (name == "tt") return MethodId::tt;
  if (name == "he") return MethodId::he;
  if (name == "gic") return MethodId::gic;
  if (name == "log") return MethodId::log;
  if (name == "ssr") return MethodId::ssr;
  if (name == "none") return MethodId::none;
  throw InvalidArgument("unknown method \"" + std::string(name) +
                        "\" (expected fdfi, tt, he, gic, log, ssr or none)");
}

std::string_view method_name(MethodId method) {
  switch (method) {
    case MethodId::fdfi: return "fdfi";
    case MethodId::tt: return "tt";
    case MethodId::he: return "he";
    case MethodId::gic: return "gic";
    case MethodId::log: return "log";
    case MethodId::ssr: return "ssr";
    case MethodId::none: return "none";
  }
  return "unknown";
}

const std::vector<std::string_view>& method_names() {
  static const std::vector<std::string_view> names = {"fdfi", "tt",  "he",  "gic",
                                                      "log",  "ssr", "none"};
  return names;
}

IntensityImage fdfi_ltein(const IntensityImage& img, const PipelineConfig& cfg) {
  validate(cfg);
  const RealImage log_domain = log2_transform(img, cfg.epsilon);
  const RealImage i_dog = dog_filter(log_domain, cfg.dog_sigma1, cfg.dog_sigma2);
  const RealImage i_dob = dob_filter(log_domain, cfg.dob_p1, cfg.dob_p2);
  const RealImage fused = fuse_sd(i_dog, i_dob);
  const RealImage equalized = lce(fused, cfg.lce);
  const RealImage bounded = tanh_compress(equalized, cfg.lce.tau);
  return rescale_to_intensity(bounded);
}

IntensityImage ssr_normalize(const IntensityImage& img, const PipelineConfig& cfg) {
  validate(cfg);
  // Surround exp(-(x^2+y^2)/c^2) is a Gaussian with 2 sigma^2 = c^2; its
  // normalization is absorbed into the kernel weights.
  const Kernel surround = gaussian_kernel(cfg.ssr_c / std::sqrt(2.0));
  RealImage shifted(img.width(), img.height());
  auto dst = shifted.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<double>(src[i]) + 1.0;
  }
  const RealImage illumination = convolve(shifted, surround);
  RealImage reflectance(img.width(), img.height());
  for (std::size_t i = 0; i < src.size(); ++i) {
    reflectance.data()[i] =
        std::log(shifted.data()[i]) - std::log(illumination.data()[i]);
  }
  return rescale_to_intensity(reflectance);
}

IntensityImage tt_normalize(const IntensityImage& img, const PipelineConfig& cfg) {
  validate(cfg);
  const RealImage gamma = gamma_transform(img, cfg.tt_gamma);
  const RealImage banded = dog_filter(gamma, cfg.dog_sigma1, cfg.dog_sigma2);
  LceParams holistic = cfg.lce;
  holistic.n = 0;
  const RealImage equalized = lce(banded, holistic);
  const RealImage bounded = tanh_compress(equalized, holistic.tau);
  return rescale_to_intensity(bounded);
}

IntensityImage normalize(MethodId method, const IntensityImage& img,
                         const PipelineConfig& cfg) {
  switch (method) {
    case MethodId::fdfi:
      return fdfi_ltein(img, cfg);
    case MethodId::tt:
      return tt_normalize(img, cfg);
    case MethodId::he:
      return hist_equalize(img);
    case MethodId::gic:
      return quantize_half_up(gamma_transform(img, cfg.gic_gamma));
    case MethodId::log:
      return rescale_to_intensity(log_filter(to_real(img), cfg.dog_sigma1));
    case MethodId::ssr:
      return ssr_normalize(img, cfg);
    case MethodId::none:
      return img;
  }
  throw InvalidArgument("unknown method id");
}

}  // namespace lumenorm
