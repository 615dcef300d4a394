#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "colsnn/connection.hpp"
#include "colsnn/errors.hpp"
#include "support/generators.hpp"

using namespace colsnn;
namespace fs = std::filesystem;

TEST(Connection, ClampsEveryWrite) {
    Connection c(0, 1, 2, 3, Sign::Excitatory, PlasticityMode::Stdp, {0.0, 1.0});
    c.set(0, 0, 1.5);
    c.set(0, 1, -0.2);
    c.set(0, 2, 0.4);
    EXPECT_DOUBLE_EQ(c.weight(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(c.weight(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(c.weight(0, 2), 0.4);
    c.add(0, 2, 0.7);
    EXPECT_DOUBLE_EQ(c.weight(0, 2), 1.0);
    c.fill(0.5);
    c.scale(3.0);
    for (double w : c.weights()) EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(Connection, SignedEfficacy) {
    Connection exc(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::None, {}, 4.0);
    Connection inh(0, 1, 1, 1, Sign::Inhibitory, PlasticityMode::None, {}, 4.0);
    EXPECT_DOUBLE_EQ(exc.efficacy(), 4.0);
    EXPECT_DOUBLE_EQ(inh.efficacy(), -4.0);
}

TEST(Connection, RejectsBadSettings) {
    EXPECT_THROW(Connection(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::None, {0.5, 0.5}), ConfigError);
    EXPECT_THROW(Connection(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::None, {-1.0, 1.0}), ConfigError);
    EXPECT_THROW(Connection(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::None, {}, 0.0), ConfigError);
    Connection c(0, 1, 2, 2, Sign::Excitatory);
    EXPECT_THROW(c.assign(std::vector<double>(3, 0.1)), ConfigError);
    EXPECT_THROW(parse_sign("positive"), ConfigError);
    EXPECT_THROW(parse_plasticity_mode("hebb"), ConfigError);
}

TEST(Connection, NamesRoundTrip) {
    for (auto s : {Sign::Excitatory, Sign::Inhibitory}) EXPECT_EQ(parse_sign(to_string(s)), s);
    for (auto m : {PlasticityMode::None, PlasticityMode::Stdp, PlasticityMode::Rstdp}) {
        EXPECT_EQ(parse_plasticity_mode(to_string(m)), m);
    }
}

TEST(Connection, SnapshotRoundTripsExactly) {
    const auto dir = fs::temp_directory_path() / "colsnn_conn_snapshot";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto rng = derive_rng(41, 0);
    Connection c(2, 3, 7, 5, Sign::Inhibitory, PlasticityMode::Rstdp, {0.0, 2.0}, 3.5);
    c.assign(gen::random_weights(rng, 35, 0.0, 2.0));
    save_connection(c, dir, "w");
    EXPECT_TRUE(fs::exists(dir / "w.csv"));
    EXPECT_TRUE(fs::exists(dir / "w.json"));
    EXPECT_EQ(load_connection(dir, "w"), c);
    fs::remove_all(dir);
}

TEST(Connection, LoadRejectsMissingOrDamagedFiles) {
    const auto dir = fs::temp_directory_path() / "colsnn_conn_damaged";
    fs::remove_all(dir);
    EXPECT_THROW(load_connection(dir, "w"), FileError);
    fs::create_directories(dir);
    Connection c(0, 1, 2, 2, Sign::Excitatory);
    save_connection(c, dir, "w");
    {
        std::ofstream out(dir / "w.csv");
        out << "0,0\n";
    }
    EXPECT_THROW(load_connection(dir, "w"), ParseError);
    fs::remove_all(dir);
}
