import "./style.css";
import { engine } from "./audio/engine";
import { installBanner } from "./banner";
import { mountDrumDemo } from "./demos/drum";
import { mountHarmonizeDemo } from "./demos/harmonize";
import { mountMixerDemo } from "./demos/mixer";
import { mountTuringDemo } from "./demos/turing";
import { el } from "./dom";

interface Tab {
  id: string;
  label: string;
  mount: (root: HTMLElement) => void;
}

const TABS: Tab[] = [
  { id: "drum", label: "Latent Inspector", mount: mountDrumDemo },
  { id: "mixer", label: "Song Mixer", mount: mountMixerDemo },
  { id: "harmonize", label: "Comp It", mount: mountHarmonizeDemo },
  { id: "turing", label: "Turing Game", mount: mountTuringDemo },
];

const app = document.getElementById("app");
if (!app) throw new Error("missing #app mount point");

const nav = el("nav", { class: "tabs" });
const stage = el("main", { class: "stage" });
app.append(
  el(
    "header",
    { class: "masthead" },
    el("h1", {}, "jamlab"),
    el("p", { class: "tagline" }, "play with the music models"),
    nav,
  ),
  stage,
);
installBanner(app);

const panes = new Map<string, HTMLElement>();
const buttons = new Map<string, HTMLButtonElement>();
const mounted = new Set<string>();

function show(id: string): void {
  engine.stop();
  for (const tab of TABS) {
    const pane = panes.get(tab.id);
    const button = buttons.get(tab.id);
    if (!pane || !button) continue;
    const active = tab.id === id;
    pane.classList.toggle("hidden", !active);
    button.classList.toggle("active", active);
    if (active && !mounted.has(tab.id)) {
      mounted.add(tab.id);
      tab.mount(pane);
    }
  }
}

for (const tab of TABS) {
  const button = el("button", { class: "tab", click: () => show(tab.id) }, tab.label);
  buttons.set(tab.id, button);
  nav.append(button);
  const pane = el("div", { class: "pane hidden" });
  panes.set(tab.id, pane);
  stage.append(pane);
}

show("drum");
