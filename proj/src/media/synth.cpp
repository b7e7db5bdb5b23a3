#include "item/media/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::media {
namespace {

constexpr double kMotionPeriod = 48.0;  // frames
constexpr int kGestureFrames = 12;
constexpr double kShadowDepth = 0.35;

struct Color {
  double y, cb, cr;
};

// 4:4:4 canvas; chroma is box-filtered down to 4:2:0 at the end.
struct Canvas {
  int w, h;
  std::vector<double> y, cb, cr;
  std::vector<std::uint8_t> fg;

  Canvas(int width, int height)
      : w(width), h(height), y(width * height), cb(width * height), cr(width * height), fg(width * height) {}

  void paint(int x, int r, const Color& c) {
    const int i = r * w + x;
    y[i] = c.y;
    cb[i] = c.cb;
    cr[i] = c.cr;
    fg[i] = 1;
  }
};

struct Actor {
  double base_x;
  double head_y;
  double head_radius;
  double phase_x;
  double phase_y;
  Color skin, hair, shirt;
  int stripe_period;
  // active gesture
  int gesture_start = -1000;
  int gesture_side = 1;
};

std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

Color random_shirt(Rng& rng) {
  return {rng.uniform(120.0, 200.0), rng.uniform(85.0, 150.0), rng.uniform(115.0, 175.0)};
}

void draw_actor(Canvas& cv, const Actor& a, double dx, double dy, int frame) {
  const double cx = a.base_x + dx;
  const double hy = a.head_y + dy;
  const double rh = a.head_radius;
  const double torso_top = hy + 1.05 * rh;
  const double torso_half = 1.7 * rh;

  // torso: rectangle with elliptical shoulders, striped
  for (int r = std::max(0, static_cast<int>(torso_top)); r < cv.h; ++r) {
    for (int x = std::max(0, static_cast<int>(cx - torso_half - 1)); x < std::min(cv.w, static_cast<int>(cx + torso_half + 2)); ++x) {
      const double u = (x + 0.5 - cx) / torso_half;
      const double v = (r + 0.5 - torso_top) / (0.6 * rh);
      const bool inside = std::abs(u) <= 1.0 && (v >= 1.0 || u * u + (1.0 - v) * (1.0 - v) <= 1.0);
      if (!inside) continue;
      const int stripe = static_cast<int>(std::floor((r - torso_top) / a.stripe_period));
      Color c = a.shirt;
      c.y += (stripe % 2 == 0) ? 18.0 : -18.0;
      cv.paint(x, r, c);
    }
  }
  // head: ellipse with hair cap, eyes, mouth
  const double ry = 1.2 * rh;
  for (int r = std::max(0, static_cast<int>(hy - ry - 1)); r < std::min(cv.h, static_cast<int>(hy + ry + 2)); ++r) {
    for (int x = std::max(0, static_cast<int>(cx - rh - 1)); x < std::min(cv.w, static_cast<int>(cx + rh + 2)); ++x) {
      const double u = (x + 0.5 - cx) / rh;
      const double v = (r + 0.5 - hy) / ry;
      if (u * u + v * v > 1.0) continue;
      Color c = a.skin;
      c.y += 12.0 * u;  // side lighting
      if (v < -0.55) c = a.hair;
      const double eu = std::abs(u) - 0.38;
      const double ev = v + 0.12;
      if (eu * eu + ev * ev * 4.0 < 0.018) c = {100.0, 128.0, 128.0};
      if (std::abs(u) < 0.3 && std::abs(v - 0.45) < 0.07) c = {118.0, 120.0, 168.0};
      cv.paint(x, r, c);
    }
  }
  // waving arm during a gesture event
  const int age = frame - a.gesture_start;
  if (age >= 0 && age < kGestureFrames) {
    const double t = static_cast<double>(age) / (kGestureFrames - 1);
    const double angle = (-20.0 + 110.0 * std::sin(std::numbers::pi * t)) * std::numbers::pi / 180.0;
    const double sx = cx + a.gesture_side * torso_half * 0.9;
    const double sy = torso_top + 0.5 * rh;
    const double len = 2.2 * rh;
    const double ex = sx + a.gesture_side * len * std::cos(angle);
    const double ey = sy - len * std::sin(angle);
    const double thick = 0.32 * rh;
    const int x0 = std::max(0, static_cast<int>(std::min(sx, ex) - 2 * thick));
    const int x1 = std::min(cv.w - 1, static_cast<int>(std::max(sx, ex) + 2 * thick));
    const int y0 = std::max(0, static_cast<int>(std::min(sy, ey) - 2 * thick));
    const int y1 = std::min(cv.h - 1, static_cast<int>(std::max(sy, ey) + 2 * thick));
    for (int r = y0; r <= y1; ++r) {
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5 - sx;
        const double py = r + 0.5 - sy;
        const double vx = ex - sx;
        const double vy = ey - sy;
        const double s = std::clamp((px * vx + py * vy) / (vx * vx + vy * vy), 0.0, 1.0);
        const double qx = px - s * vx;
        const double qy = py - s * vy;
        const double hx = x + 0.5 - ex;
        const double hyy = r + 0.5 - ey;
        if (hx * hx + hyy * hyy <= 2.2 * thick * thick) {
          cv.paint(x, r, a.skin);
        } else if (qx * qx + qy * qy <= thick * thick) {
          cv.paint(x, r, a.shirt);
        }
      }
    }
  }
}

// Soft shadow an actor casts on the wall behind it, in [0, 1].
double shadow_weight(const Actor& a, double dx, double dy, int x, int r) {
  const double rh = a.head_radius;
  const double cx = a.base_x + dx + 0.45 * rh;
  const double hy = a.head_y + dy + 0.25 * rh;
  const double px = x + 0.5 - cx;
  const double py = r + 0.5 - hy;
  const double head = std::sqrt(px * px / (1.3 * rh * 1.3 * rh) + py * py / (1.5 * rh * 1.5 * rh));
  double torso = 10.0;
  if (py > 1.0 * rh) torso = std::abs(px) / (2.0 * rh);
  const double d = std::min(head, torso);
  return std::clamp((1.25 - d) / 0.5, 0.0, 1.0);
}

}  // namespace

VideoSequence synth_chat_sequence(const SynthSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0 || spec.width % 16 != 0 || spec.height % 16 != 0) {
    throw InvalidArgument("synth: dimensions must be positive multiples of 16");
  }
  if (spec.frame_count < 1) throw InvalidArgument("synth: frame_count must be >= 1");
  if (spec.actor_count < 0) throw InvalidArgument("synth: negative actor_count");
  if (spec.actor_count == 0 && spec.gesture_rate > 0.0) {
    throw InvalidArgument("synth: gesture_rate > 0 requires at least one actor");
  }
  if (spec.lighting_flicker < 0 || spec.lighting_flicker > 32) {
    throw InvalidArgument("synth: lighting_flicker must be in [0, 32]");
  }
  if (spec.motion_amplitude < 0.0 || spec.gesture_rate < 0.0 || spec.noise_sigma < 0.0 || spec.fps <= 0) {
    throw InvalidArgument("synth: negative rate parameter");
  }

  const int w = spec.width;
  const int h = spec.height;
  Rng scene(spec.seed);
  Rng events(spec.seed ^ 0x9E3779B97F4A7C15ULL);
  Rng sensor(spec.seed ^ 0xD1B54A32D192ED03ULL);

  // static room: vertical gradient, a few furniture blocks, fixed fine texture
  Canvas room(w, h);
  for (int r = 0; r < h; ++r) {
    for (int x = 0; x < w; ++x) {
      const int i = r * w + x;
      room.y[i] = 150.0 - 60.0 * r / h;
      room.cb[i] = 122.0 + 10.0 * x / w;
      room.cr[i] = 132.0 - 6.0 * r / h;
    }
  }
  const int blocks = scene.uniform_int(4, 8);
  for (int b = 0; b < blocks; ++b) {
    const int bw = scene.uniform_int(w / 10, w / 3);
    const int bh = scene.uniform_int(h / 10, h / 2);
    const int bx = scene.uniform_int(0, w - bw);
    const int by = scene.uniform_int(0, h - bh);
    const Color c{scene.uniform(40.0, 220.0), scene.uniform(100.0, 156.0), scene.uniform(100.0, 156.0)};
    for (int r = by; r < by + bh; ++r) {
      for (int x = bx; x < bx + bw; ++x) {
        const int i = r * w + x;
        room.y[i] = c.y;
        room.cb[i] = c.cb;
        room.cr[i] = c.cr;
      }
    }
  }
  // bookshelf: a band of narrow spines with random shade
  const int shelf_top = scene.uniform_int(0, h / 4);
  const int shelf_bottom = std::min(h, shelf_top + h / 3);
  for (int x = 0; x < w;) {
    const int spine = scene.uniform_int(2, 5);
    const Color c{scene.uniform(40.0, 220.0), scene.uniform(100.0, 156.0), scene.uniform(100.0, 156.0)};
    const int top = shelf_top + scene.uniform_int(0, 4);
    for (int r = top; r < shelf_bottom; ++r) {
      for (int k = 0; k < spine && x + k < w; ++k) {
        const int i = r * w + x + k;
        room.y[i] = c.y;
        room.cb[i] = c.cb;
        room.cr[i] = c.cr;
      }
    }
    x += spine + 1;
  }
  // poster: small checkerboard near the floor
  const int px0 = scene.uniform_int(0, w / 2);
  const int py0 = h / 2 + scene.uniform_int(0, h / 8);
  for (int r = py0; r < std::min(h, py0 + h / 4); ++r)
    for (int x = px0; x < std::min(w, px0 + w / 3); ++x) room.y[r * w + x] = (((x - px0) / 3 + (r - py0) / 3) % 2) ? 200.0 : 60.0;
  for (double& v : room.y) v += scene.uniform(-6.0, 6.0);

  std::vector<Actor> actors;
  for (int i = 0; i < spec.actor_count; ++i) {
    Actor a;
    a.base_x = w * (i + 1.0) / (spec.actor_count + 1.0);
    a.head_y = h * 0.33;
    a.head_radius = h / 9.0;
    a.phase_x = scene.uniform(0.0, 2.0 * std::numbers::pi);
    a.phase_y = scene.uniform(0.0, 2.0 * std::numbers::pi);
    a.skin = {scene.uniform(150.0, 190.0), scene.uniform(105.0, 118.0), scene.uniform(140.0, 160.0)};
    a.hair = {scene.uniform(100.0, 115.0), scene.uniform(120.0, 128.0), scene.uniform(128.0, 135.0)};
    a.shirt = random_shirt(scene);
    a.stripe_period = scene.uniform_int(4, 8);
    actors.push_back(a);
  }

  const double sway = spec.motion_amplitude * kMotionPeriod / (2.0 * std::numbers::pi);
  const double gesture_p = spec.gesture_rate / spec.fps;

  VideoSequence seq;
  seq.fps_num = spec.fps;
  seq.fps_den = 1;
  seq.masks.emplace();
  for (int t = 0; t < spec.frame_count; ++t) {
    Canvas cv = room;
    std::vector<std::pair<double, double>> offsets;
    for (auto& a : actors) {
      if (gesture_p > 0.0 && t - a.gesture_start >= kGestureFrames && events.uniform() < gesture_p) {
        a.gesture_start = t;
        a.gesture_side = events.uniform() < 0.5 ? -1 : 1;
      }
      offsets.emplace_back(sway * std::sin(2.0 * std::numbers::pi * t / kMotionPeriod + a.phase_x),
                           0.3 * sway * std::sin(2.0 * std::numbers::pi * t / (0.7 * kMotionPeriod) + a.phase_y));
    }
    for (int r = 0; r < h; ++r) {
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (std::size_t k = 0; k < actors.size(); ++k)
          s = std::max(s, shadow_weight(actors[k], offsets[k].first, offsets[k].second, x, r));
        if (s > 0.0) cv.y[r * w + x] = 16.0 + (cv.y[r * w + x] - 16.0) * (1.0 - kShadowDepth * s);
      }
    }
    for (std::size_t k = 0; k < actors.size(); ++k) draw_actor(cv, actors[k], offsets[k].first, offsets[k].second, t);
    // illumination gain: `flicker` is the luma change at mid-grey
    const int flicker = (t == 0 || spec.lighting_flicker == 0) ? 0
                                                               : events.uniform_int(-spec.lighting_flicker, spec.lighting_flicker);
    const double gain = 1.0 + flicker / 128.0;

    Frame f(w, h);
    ForegroundMask m(w, h);
    for (int r = 0; r < h; ++r) {
      for (int x = 0; x < w; ++x) {
        const int i = r * w + x;
        double yv = cv.y[i] * gain;
        if (spec.noise_sigma > 0.0) yv += spec.noise_sigma * sensor.normal();
        f.y(x, r) = clamp8(yv);
        m.set(x, r, cv.fg[i] != 0);
      }
    }
    for (int r = 0; r < h / 2; ++r) {
      for (int x = 0; x < w / 2; ++x) {
        double cb = 0.0, cr = 0.0;
        for (int k = 0; k < 4; ++k) {
          const int i = (2 * r + k / 2) * w + 2 * x + k % 2;
          cb += cv.cb[i];
          cr += cv.cr[i];
        }
        cb /= 4.0;
        cr /= 4.0;
        if (spec.noise_sigma > 0.0) {
          cb += spec.noise_sigma * sensor.normal();
          cr += spec.noise_sigma * sensor.normal();
        }
        f.cb(x, r) = clamp8(cb);
        f.cr(x, r) = clamp8(cr);
      }
    }
    seq.frames.push_back(std::move(f));
    seq.masks->push_back(std::move(m));
  }
  return seq;
}

}  // namespace item::media
