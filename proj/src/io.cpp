#include "shakhov/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "shakhov/config.hpp"

namespace shakhov {

namespace {

constexpr char kMagic[8] = {'S', 'H', 'K', 'C', 'K', 'P', 'T', '\0'};

void append(std::string& s, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  if (!s.empty()) s += ',';
  s += buf;
}

template <class T>
void put(std::ostream& out, const T& x) {
  out.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T x{};
  in.read(reinterpret_cast<char*>(&x), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: truncated file");
  return x;
}

}  // namespace

std::string csv_header() {
  return "t,mass,momentum_1,momentum_2,momentum_3,energy,third_moment_1,third_moment_2,"
         "third_moment_3,l2_norm_f,energy_instant,energy_production,h_value,min_F,min_S,"
         "max_drho,max_U,max_dTheta,max_q,a,b_1,b_2,b_3,c,d_1,d_2,d_3,max_abs_a,max_abs_b,"
         "max_abs_c,max_abs_d";
}

std::string csv_row(const DiagnosticsRecord& r) {
  std::string s;
  append(s, r.t);
  append(s, r.mass);
  for (double x : r.momentum) append(s, x);
  append(s, r.energy);
  for (double x : r.third_moment) append(s, x);
  append(s, r.l2_norm_f);
  append(s, r.energy_instant);
  append(s, r.energy_production);
  append(s, r.h_value);
  append(s, r.min_F);
  append(s, r.min_S);
  append(s, r.max_drho);
  append(s, r.max_U);
  append(s, r.max_dTheta);
  append(s, r.max_q);
  append(s, r.coeffs.a);
  for (double x : r.coeffs.b) append(s, x);
  append(s, r.coeffs.c);
  for (double x : r.coeffs.d) append(s, x);
  append(s, r.max_abs_a);
  append(s, r.max_abs_b);
  append(s, r.max_abs_c);
  append(s, r.max_abs_d);
  return s;
}

void write_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

void write_csv(const std::string& path, std::span<const DiagnosticsRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, records);
}

void write_checkpoint(const std::string& path, const SimConfig& config, double t,
                      const DistributionField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const std::string text = render_config(config);
  out.write(kMagic, sizeof kMagic);
  put(out, kCheckpointVersion);
  put(out, static_cast<std::uint64_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  put(out, t);
  put(out, static_cast<std::uint64_t>(field.n_cells));
  put(out, static_cast<std::uint64_t>(field.n_nodes));
  put(out, static_cast<std::uint8_t>(field.kind == FieldKind::absolute ? 0 : 1));
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));

  Checkpoint ck;
  const auto len = get<std::uint64_t>(in);
  ck.config_text.resize(len);
  in.read(ck.config_text.data(), static_cast<std::streamsize>(len));
  ck.t = get<double>(in);
  const auto n_cells = get<std::uint64_t>(in);
  const auto n_nodes = get<std::uint64_t>(in);
  const auto kind = get<std::uint8_t>(in);
  if (kind > 1) throw std::runtime_error("checkpoint: bad field kind");
  ck.field = DistributionField(n_cells, n_nodes, kind == 0 ? FieldKind::absolute : FieldKind::perturbation);
  in.read(reinterpret_cast<char*>(ck.field.values.data()),
          static_cast<std::streamsize>(ck.field.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("checkpoint: truncated values");
  return ck;
}

}  // namespace shakhov
