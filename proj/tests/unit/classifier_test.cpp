#include <gtest/gtest.h>

#include "evlog/classifier.hpp"
#include "evlog/error.hpp"
#include "helpers.hpp"

using namespace evlog;
using test::fixture_case;
using test::fixture_log;

TEST(Classifier, ParseAndName) {
  const auto cl = Classifier::parse("action+life-cycle");
  EXPECT_EQ(cl.attributes(), (std::vector<std::string>{"action", "life-cycle"}));
  EXPECT_EQ(cl.name(), "action+life-cycle");
  EXPECT_THROW(Classifier::parse(""), Error);
  EXPECT_THROW(Classifier({"a", "a"}), Error);
  EXPECT_THROW(Classifier(std::vector<std::string>{}), Error);
}

TEST(Classifier, ClassesOfE4AndE8) {
  const auto& c = fixture_case(35);
  const auto act = Classifier::parse("action");
  const auto act_lc = Classifier::parse("action+life-cycle");
  EXPECT_EQ(classify(act_lc, c.trace[1]).text(), "pack order+start");
  EXPECT_EQ(classify(act_lc, c.trace[5]).text(), "pack order+complete");
  EXPECT_EQ(classify(act, c.trace[1]), classify(act, c.trace[5]));
}

TEST(Classifier, ComparisonIsByTupleNotText) {
  // Joined text coincides, tuples differ.
  EventClass a({AttributeValue::text("x+y"), AttributeValue::text("z")}, "+");
  EventClass b({AttributeValue::text("x"), AttributeValue::text("y+z")}, "+");
  EXPECT_EQ(a.text(), b.text());
  EXPECT_NE(a, b);
}

TEST(Classifier, UndefinedValueOmitsEvent) {
  const auto& c = fixture_case(35);
  const auto item = Classifier::parse("item");
  EXPECT_TRUE(classify(item, c.trace[0]).is_undefined());
  const auto t = simple_trace(item, c, event_classes(fixture_log(), item));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].text(), "iPhone X");
}

TEST(Classifier, Alphabets) {
  EXPECT_EQ(event_classes(fixture_log(), Classifier::parse("action")).size(), 6u);
  EXPECT_EQ(event_classes(fixture_log(), Classifier::parse("user")).size(), 4u);
  EXPECT_EQ(event_classes(fixture_log(), Classifier::parse("action+life-cycle")).size(), 7u);
}

TEST(SimpleLog, OrderAction) {
  const auto s = simple_log(fixture_log(), Classifier::parse("action"));
  EXPECT_EQ(s.case_count(), 5u);
  EXPECT_EQ(s.variants.size(), 5u);
  const auto text = format_variants(s);
  EXPECT_EQ(text,
            "1\treceive order,pack order,add item,add item,ship parcel,pack order,receive "
            "payment,archive\n"
            "1\treceive order,pack order,add item,pack order,receive payment,pack order,add "
            "item,ship parcel\n"
            "1\treceive order,pack order,add item,ship parcel,add item,ship parcel,pack "
            "order,archive\n"
            "1\treceive order,pack order,receive payment,add item,pack order,archive\n"
            "1\treceive payment,archive\n");
}

TEST(SimpleLog, CountsAndOrder) {
  // Customer is only set on the first event of each order; A7001 placed three.
  const auto s = simple_log(fixture_log(), Classifier::parse("customer"));
  EXPECT_EQ(format_variants(s), "3\tA7001\n1\tB3502\n1\tC1207\n");

  // 23 has no type, 72 a single one: empty and short variants sort by count, then text.
  const auto t = simple_log(fixture_log(), Classifier::parse("type")).sorted_variants();
  ASSERT_EQ(t.size(), 5u);
  EXPECT_TRUE(t[0].classes.empty());
  EXPECT_EQ(t[1].classes.size(), 8u);
  EXPECT_EQ(t[1].classes[0].text(), "offline");
}

TEST(SimpleLog, ClassFrequencies) {
  const auto s = simple_log(fixture_log(), Classifier::parse("action"));
  const auto f = s.class_frequencies();
  EXPECT_EQ(f.at(EventClass({AttributeValue::text("pack order")}, "+")), 9u);
  EXPECT_EQ(f.at(EventClass({AttributeValue::text("archive")}, "+")), 4u);
}
