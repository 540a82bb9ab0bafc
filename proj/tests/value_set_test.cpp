#include <gtest/gtest.h>

#include <fptedit/value_set.hpp>

using fptedit::ValueSet;

TEST(ValueSet, SortsAndDeduplicates) {
  ValueSet s{5, 1, 3, 1};
  EXPECT_EQ(s.values(), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(s.min(), 1);
  EXPECT_EQ(s.max(), 5);
  EXPECT_FALSE(s.is_singleton());
}

TEST(ValueSet, RejectsNegativeValues) {
  EXPECT_THROW((ValueSet{-1, 2}), std::invalid_argument);
  EXPECT_THROW(ValueSet::range(3, 2), std::invalid_argument);
}

TEST(ValueSet, ContainsWideIntegers) {
  ValueSet s = ValueSet::range(2, 4);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(5));
  EXPECT_FALSE(s.contains(std::int64_t{1} << 40));
}

TEST(ValueSet, TextFormCollapsesRuns) {
  EXPECT_EQ((ValueSet{1, 2, 5, 6, 7}).to_string(), "{1,2,5..7}");
  EXPECT_EQ(ValueSet::singleton(3).to_string(), "{3}");
  EXPECT_EQ(ValueSet{}.to_string(), "{}");
  EXPECT_EQ((ValueSet{0, 2, 4}).to_string(), "{0,2,4}");
}
