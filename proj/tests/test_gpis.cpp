#include <catch2/catch_amalgamated.hpp>

#include "graspbo/geometry/sampling.hpp"
#include "graspbo/geometry/shapes.hpp"
#include "graspbo/gpis/chart.hpp"
#include "graspbo/gpis/gpis.hpp"

using namespace graspbo;

namespace {

GpisModel unit_sphere_model() {
    static GpisModel gpis = [] {
        SurfaceSamples train = sample_surface(make_icosphere(1.0, 3), 400, 0);
        return GpisModel::fit(train, 0.1);
    }();
    return gpis;
}

}  // namespace

TEST_CASE("implicit surface reproduces a unit sphere") {
    GpisModel gpis = unit_sphere_model();

    // held-out points on the analytic surface sit inside the narrow band
    SurfaceSamples test = sample_surface(make_icosphere(1.0, 3), 300, 99);
    int sign_ok = 0;
    for (size_t i = 0; i < test.size(); ++i) {
        CHECK(std::abs(gpis.value(test.points[i])) < 0.01);
        if (gpis.value(0.5 * test.points[i]) < 0.0 && gpis.value(1.5 * test.points[i]) > 0.0)
            sign_ok++;
    }
    CHECK(sign_ok >= 297);  // >= 99% correct inside/outside classification
}

TEST_CASE("auto hyperparameters follow the training cloud diagonal") {
    GpisModel gpis = unit_sphere_model();
    Vec3 lo = gpis.train_inputs().colwise().minCoeff();
    Vec3 hi = gpis.train_inputs().colwise().maxCoeff();
    double diag = (hi - lo).norm();
    CHECK(gpis.sigma() == Catch::Approx(0.2 * diag).epsilon(1e-12));
    CHECK(gpis.rho() == Catch::Approx(0.4 * diag).epsilon(1e-12));
    CHECK(gpis.jitter() == 1e-8);
    CHECK(gpis.surface_count() == 400);
    CHECK(gpis.train_inputs().rows() == 1200);

    GpisHyper manual;
    manual.sigma = 0.5;
    manual.rho = 0.9;
    GpisModel m = GpisModel::fit(sample_surface(make_icosphere(1.0, 2), 100, 0), 0.1, manual);
    CHECK(m.sigma() == 0.5);
    CHECK(m.rho() == 0.9);
}

TEST_CASE("analytic gradient matches central differences") {
    GpisModel gpis = unit_sphere_model();
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        Vec3 p(rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3));
        auto [v, g] = gpis.query(p);
        CHECK(v == Catch::Approx(gpis.value(p)).margin(1e-12));
        const double h = 1e-5;
        Vec3 fd;
        for (int d = 0; d < 3; ++d) {
            Vec3 up = p, dn = p;
            up(d) += h;
            dn(d) -= h;
            fd(d) = (gpis.value(up) - gpis.value(dn)) / (2 * h);
        }
        CHECK((g - fd).norm() / std::max(1e-12, fd.norm()) < 1e-4);
    }
}

TEST_CASE("field reverts to the outside level far from data") {
    GpisModel gpis = unit_sphere_model();
    CHECK(gpis.value(Vec3(100, 0, 0)) == Catch::Approx(0.1).margin(1e-12));
    CHECK(gpis.value(Vec3(3, 0, 0)) > 0.0);
    CHECK(gpis.value(Vec3(0, 0, 0)) < 0.0);
}

TEST_CASE("batched evaluation agrees with the scalar path") {
    GpisModel gpis = unit_sphere_model();
    Rng rng(123);
    MatX pts(200, 3);
    for (long i = 0; i < 200; ++i)
        pts.row(i) << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    VecX batch = gpis.values(pts);
    for (long i = 0; i < 200; ++i)
        CHECK(batch(i) == Catch::Approx(gpis.value(pts.row(i).transpose())).margin(1e-9));
}

TEST_CASE("surface cap thins the training set by stride") {
    SurfaceSamples train = sample_surface(make_icosphere(1.0, 3), 400, 0);
    GpisHyper hyp;
    hyp.surface_cap = 100;
    GpisModel thin = GpisModel::fit(train, 0.1, hyp);
    CHECK(thin.surface_count() == 100);
    CHECK(thin.train_inputs().rows() == 300);
    // thinned model still resolves the surface
    CHECK(std::abs(thin.value(Vec3(0, 0, 1))) < 0.02);
}

TEST_CASE("fit rejects unusable input") {
    SurfaceSamples few;
    for (int i = 0; i < 3; ++i) {
        few.points.push_back(Vec3(double(i), 0, 0));
        few.normals.push_back(Vec3::UnitZ());
        few.face_ids.push_back(0);
    }
    CHECK_THROWS_MATCHES(GpisModel::fit(few, 0.1), GraspboError,
                         Catch::Matchers::Predicate<GraspboError>(
                             [](const GraspboError& e) { return e.code() == "TooFewSamples"; }));

    SurfaceSamples ok = sample_surface(make_icosphere(1.0, 1), 50, 0);
    CHECK_THROWS_AS(GpisModel::fit(ok, 0.0), GraspboError);
    CHECK_THROWS_AS(GpisModel::fit(ok, -0.1), GraspboError);
}

TEST_CASE("jitter ladder absorbs duplicate samples") {
    SurfaceSamples dup;
    for (int i = 0; i < 50; ++i) {
        dup.points.push_back(Vec3(1, 0, 0));
        dup.normals.push_back(Vec3(1, 0, 0));
        dup.face_ids.push_back(0);
    }
    GpisModel gd = GpisModel::fit(dup, 0.1);
    CHECK(gd.jitter() == 1e-8);
    CHECK(std::abs(gd.value(Vec3(1, 0, 0))) < 1e-3);

    // a hopeless jitter start exhausts the ladder
    GpisHyper hopeless;
    hopeless.jitter = 1e-30;
    CHECK_THROWS_MATCHES(GpisModel::fit(dup, 0.1, hopeless), GraspboError,
                         Catch::Matchers::Predicate<GraspboError>(
                             [](const GraspboError& e) { return e.code() == "SingularKernel"; }));
}

TEST_CASE("json round trip preserves the model") {
    GpisModel gpis = unit_sphere_model();
    GpisModel back = GpisModel::from_json(gpis.to_json());
    CHECK(back.sigma() == gpis.sigma());
    CHECK(back.rho() == gpis.rho());
    CHECK(back.offset() == gpis.offset());
    CHECK(back.surface_count() == gpis.surface_count());
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        Vec3 p(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
        CHECK(back.value(p) == Catch::Approx(gpis.value(p)).margin(1e-12));
    }

    nlohmann::json broken = gpis.to_json();
    broken["targets"] = std::vector<double>{0.0};
    CHECK_THROWS_AS(GpisModel::from_json(broken), GraspboError);
}

TEST_CASE("charts parameterize the surface around a point") {
    GpisModel gpis = unit_sphere_model();
    Chart ch = make_chart(gpis, Vec3(0, 0, 1), 0.1);

    CHECK(ch.normal.norm() == Catch::Approx(1.0).margin(1e-12));
    CHECK(ch.normal.dot(Vec3::UnitZ()) > 0.99);  // outward at the pole
    CHECK(ch.basis.col(0).norm() == Catch::Approx(1.0).margin(1e-12));
    CHECK(ch.basis.col(1).norm() == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(ch.basis.col(0).dot(ch.basis.col(1))) < 1e-12);
    CHECK(std::abs(ch.basis.col(0).dot(ch.normal)) < 1e-12);
    CHECK(std::abs(ch.basis.col(1).dot(ch.normal)) < 1e-12);

    CHECK(chart_point(ch, Vec2::Zero()) == ch.center);
    // tangent-plane points near the center stay close to the level set
    for (int k = 0; k < 64; ++k) {
        double th = 2 * M_PI * k / 64.0;
        Vec2 u(0.099 * std::cos(th), 0.099 * std::sin(th));
        CHECK(std::abs(gpis.value(chart_point(ch, u))) < 0.01);
    }

    CHECK_THROWS_MATCHES(chart_point(ch, Vec2(0.2, 0.0)), GraspboError,
                         Catch::Matchers::Predicate<GraspboError>(
                             [](const GraspboError& e) { return e.code() == "OutOfChart"; }));
    CHECK_THROWS_AS(make_chart(gpis, Vec3(0, 0, 1), 0.0), GraspboError);
    CHECK_THROWS_MATCHES(make_chart(gpis, Vec3(30, 0, 0), 0.1), GraspboError,
                         Catch::Matchers::Predicate<GraspboError>([](const GraspboError& e) {
                             return e.code() == "VanishingGradient";
                         }));
}

TEST_CASE("chart frames are deterministic in the normal") {
    GpisModel gpis = unit_sphere_model();
    Chart a = make_chart(gpis, Vec3(0, 0, 1), 0.1);
    Chart b = make_chart(gpis, Vec3(0, 0, 1), 0.1);
    CHECK(a.basis == b.basis);
    CHECK(a.normal == b.normal);
}
