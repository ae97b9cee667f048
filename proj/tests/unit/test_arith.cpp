#include <gtest/gtest.h>

#include <besseldelta/arith.hpp>
#include <besseldelta/errors.hpp>
#include <cmath>
#include <random>

using namespace bdelta;

TEST(Elementary, Basics) {
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(primes_up_to(30).size(), 10u);
  EXPECT_EQ(mod(-3, 7), 4);
  EXPECT_EQ(mod_inverse(3, 11), 4);
  EXPECT_THROW(mod_inverse(6, 9), ParameterError);
  EXPECT_EQ(primitive_root(11), 2);
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(divisors(12), (std::vector<i64>{1, 2, 3, 4, 6, 12}));
}

TEST(Character, Structure) {
  const auto chars = DirichletCharacter::all(13);
  ASSERT_EQ(chars.size(), 12u);
  EXPECT_TRUE(chars[0].is_principal());
  EXPECT_TRUE(DirichletCharacter::quadratic(13).is_quadratic());
  EXPECT_EQ(DirichletCharacter(13, 4).order(), 3);
  EXPECT_EQ(DirichletCharacter(13, 1)(26), cplx(0.0, 0.0));
  EXPECT_THROW(DirichletCharacter(15, 1), ParameterError);
  EXPECT_THROW(DirichletCharacter(3, 1), ParameterError);
}

TEST(CharacterProperty, MultiplicativeAndOrthogonal) {
  const int q = 31;
  for (const auto& chi : DirichletCharacter::all(q)) {
    for (i64 a = 1; a < q; a += 4) {
      for (i64 b = 2; b < q; b += 5) {
        EXPECT_NEAR(std::abs(chi(a * b) - chi(a) * chi(b)), 0.0, 1e-13);
      }
    }
    cplx total = 0.0;
    for (i64 n = 0; n < q; ++n) total += chi(n);
    EXPECT_NEAR(std::abs(total), chi.is_principal() ? q - 1.0 : 0.0, 1e-12) << chi.index();
  }
}

TEST(GaussSum, ModulusIsSqrtQ) {
  for (int q : {5, 7, 11, 31, 101}) {
    for (const auto& chi : DirichletCharacter::all(q)) {
      if (chi.is_principal()) {
        EXPECT_THROW(gauss_sum(chi), DegenerateInputError);
        continue;
      }
      EXPECT_NEAR(std::abs(gauss_sum(chi)), std::sqrt(q), 1e-12 * q) << q << " " << chi.index();
    }
  }
  // quadratic Gauss sum: sqrt(q) for q = 1 mod 4, i sqrt(q) for q = 3 mod 4
  EXPECT_NEAR(std::abs(gauss_sum(DirichletCharacter::quadratic(13)) - std::sqrt(13.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum(DirichletCharacter::quadratic(11)) - cplx(0.0, std::sqrt(11.0))), 0.0, 1e-12);
}

TEST(RamanujanSum, ClosedFormMatchesBruteForce) {
  EXPECT_EQ(ramanujan_sum_exact(6, 2), -1);
  EXPECT_EQ(ramanujan_sum(7, 14), 6);
  EXPECT_EQ(ramanujan_sum(7, 3), -1);
  EXPECT_THROW(ramanujan_sum(6, 1), ParameterError);
  for (i64 c = 1; c <= 101; ++c) {
    for (i64 a = 0; a <= 101; a += 7) {
      EXPECT_NEAR(ramanujan_sum_bruteforce(c, a), static_cast<double>(ramanujan_sum_exact(c, a)), 1e-10)
          << c << " " << a;
    }
  }
}

TEST(Kloosterman, KnownValueAndWeilBound) {
  EXPECT_NEAR(kloosterman(1, 1, 5), 0.381966011250105, 1e-13);
  EXPECT_NEAR(kloosterman(0, 0, 12), 4.0, 1e-12);  // phi(12)
  for (i64 c : {5, 7, 11, 13, 53, 97, 101}) {
    for (i64 a = 1; a < c; a += 3) {
      EXPECT_LE(std::abs(kloosterman(a, 1, c)), 2.0 * std::sqrt(static_cast<double>(c)) + 1e-9) << c << " " << a;
    }
  }
  EXPECT_THROW(kloosterman(1, 1, 0), ParameterError);
}

TEST(KloostermanProperty, SymmetryAndTwisting) {
  // S(a, b; c) = S(b, a; c) = S(1, ab; c) for (a, c) = 1
  for (i64 c : {7, 9, 11, 25, 101}) {
    for (i64 a = 1; a < c; a += 2) {
      if (gcd(a, c) != 1) continue;
      const i64 b = 3;
      EXPECT_NEAR(kloosterman(a, b, c), kloosterman(b, a, c), 1e-11);
      EXPECT_NEAR(kloosterman(a, b, c), kloosterman(1, a * b, c), 1e-11);
    }
  }
}

TEST(FrakC, ClosedFormsMatchBruteForce) {
  for (int q : {11, 13, 31}) {
    for (const auto& chi : DirichletCharacter::all(q)) {
      if (chi.is_principal()) continue;
      // q | m
      const auto a = frak_c_closed(chi, 2, 3, 5, 7, q);
      ASSERT_TRUE(a.has_value());
      EXPECT_NEAR(std::abs(*a - frak_c_bruteforce(chi, 2, 3, 5, 7, q)), 0.0, 1e-10) << q << " " << chi.index();
      // double root: r1 = mbar gamma, r2 = -mbar alpha
      const i64 m = 3, alpha = 5, gamma = 2, mbar = mod_inverse(m, q);
      const i64 r1 = mod(mbar * gamma, q), r2 = mod(-mbar * alpha, q);
      ASSERT_EQ(frak_c_case(q, r1, r2, alpha, gamma, m), FrakCCase::double_root);
      const auto b = frak_c_closed(chi, r1, r2, alpha, gamma, m);
      ASSERT_TRUE(b.has_value());
      EXPECT_NEAR(std::abs(*b - frak_c_bruteforce(chi, r1, r2, alpha, gamma, m)), 0.0, 1e-10)
          << q << " " << chi.index();
    }
  }
}

TEST(FrakC, GenericCaseIsBounded) {
  std::mt19937_64 rng(11);
  for (int q : {11, 31, 101}) {
    std::uniform_int_distribution<i64> unit(1, q - 1);
    const auto chars = DirichletCharacter::all(q);
    for (int k = 0; k < 200; ++k) {
      const auto& chi = chars[1 + k % (q - 2)];
      const i64 r1 = unit(rng), r2 = unit(rng), alpha = unit(rng), gamma = unit(rng), m = unit(rng);
      if (frak_c_case(q, r1, r2, alpha, gamma, m) != FrakCCase::generic) continue;
      EXPECT_FALSE(frak_c_closed(chi, r1, r2, alpha, gamma, m).has_value());
      EXPECT_LE(std::abs(frak_c_bruteforce(chi, r1, r2, alpha, gamma, m)), 3.0 * std::sqrt(q));
    }
  }
}

TEST(FrakC, RejectsBadInput) {
  EXPECT_THROW(frak_c_closed(DirichletCharacter(11, 0), 1, 2, 3, 4, 5), ParameterError);
  EXPECT_THROW(frak_c_closed(DirichletCharacter(11, 1), 1, 2, 11, 4, 5), ParameterError);
  EXPECT_THROW(frak_c_bruteforce(DirichletCharacter(11, 1), 1, 2, 3, 0, 5), ParameterError);
}
