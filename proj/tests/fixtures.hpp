// Shared draft fixtures for render and acceptance tests.
#pragma once

#include "infogen/init.hpp"

namespace fixtures {

using namespace infogen;

// One draft exercising every content kind.
inline Draft fixture_draft() {
  Draft d;
  d.canvas = {800.0, 600.0, {"#1B2A41", std::nullopt}};

  DraftElement number;
  number.element_type = ElementType::number;
  number.box = {60.0, 40.0, 360.0, 160.0};
  number.color = {"#FFB703", std::nullopt};
  number.content = TextContent{"74%", {"Montserrat", true, false}, 100.0};
  number.source_builtin = 3.0;
  d.elements.push_back(number);

  DraftElement after;
  after.element_type = ElementType::after;
  after.box = {60.0, 180.0, 360.0, 260.0};
  after.color = {"#F2F4F8", std::nullopt};
  after.content = TextContent{"of users are female", {"Lato", false, false}, 28.0};
  after.source_builtin = 19.0;
  d.elements.push_back(after);

  DraftElement donut;
  donut.element_type = ElementType::donut;
  donut.box = {420.0, 40.0, 660.0, 280.0};
  donut.color = {"#5BC0BE", std::string("#4F5D75")};
  donut.content = ChartSpec{ChartKind::donut, 0.74, 1.0};
  donut.source_builtin = 1.0;
  d.elements.push_back(donut);

  DraftElement bar;
  bar.element_type = ElementType::bar;
  bar.box = {60.0, 320.0, 660.0, 380.0};
  bar.color = {"#EF8354", std::nullopt};
  bar.content = ChartSpec{ChartKind::bar, 0.74, 10.0};
  bar.source_builtin = 10.0;
  d.elements.push_back(bar);

  DraftElement pict;
  pict.element_type = ElementType::pictograph;
  pict.box = {60.0, 420.0, 660.0, 540.0};
  pict.color = {"#5BC0BE", std::nullopt};
  pict.content = PictographSpec{{"female", 0.5,
                                 "M0.36 0.14 A0.14 0.14 0 1 1 0.64 0.14 "
                                 "A0.14 0.14 0 1 1 0.36 0.14 Z M0.5 0.3 "
                                 "L0.78 0.78 L0.6 0.78 L0.6 1 L0.4 1 "
                                 "L0.4 0.78 L0.22 0.78 Z"},
                                10, 0.74};
  pict.source_builtin = 5.0;
  d.elements.push_back(pict);

  DraftElement icon;
  icon.element_type = ElementType::single_icon;
  icon.box = {680.0, 60.0, 760.0, 220.0};  // aspect 0.5
  icon.color = {"#FFB703", std::string("#F2F4F8")};
  icon.content = IconAsset{"generic_person", 0.5, "M0.2 0 L0.8 0 L0.8 1 L0.2 1 Z"};
  icon.source_builtin = 0.5;
  d.elements.push_back(icon);

  return d;
}

}  // namespace fixtures
