// Error banner shared by all demos: no request failure is silent.

import { ApiError } from "./api";
import { el } from "./dom";

let banner: HTMLElement | null = null;
let hideTimer: number | null = null;

export function installBanner(parent: HTMLElement): void {
  banner = el("div", { class: "banner hidden", role: "alert" });
  parent.append(banner);
}

export function showError(err: unknown): void {
  if (!banner) return;
  let text: string;
  if (err instanceof ApiError) {
    text = err.field ? `${err.message} (field: ${err.field})` : err.message;
  } else if (err instanceof Error) {
    text = err.message;
  } else {
    text = String(err);
  }
  banner.textContent = `request failed: ${text}`;
  banner.classList.remove("hidden");
  if (hideTimer !== null) window.clearTimeout(hideTimer);
  hideTimer = window.setTimeout(() => banner?.classList.add("hidden"), 6000);
}
